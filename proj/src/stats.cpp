#include "fpplab/stats.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace fpplab {

namespace {
double pairwise_range(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_range(v, lo, mid) + pairwise_range(v, mid, hi);
}
}  // namespace

double pairwise_sum(const std::vector<double>& values) {
  return values.empty() ? 0.0 : pairwise_range(values, 0, values.size());
}

EstimateRecord summarize(const std::string& observable, int n,
                         const std::vector<double>& values,
                         std::uint64_t master_seed) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  EstimateRecord rec;
  rec.observable = observable;
  rec.n = n;
  rec.replicates = static_cast<int>(values.size());
  rec.master_seed = master_seed;
  rec.mean = pairwise_sum(values) / static_cast<double>(values.size());
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - rec.mean;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    rec.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
  }
  rec.ci95 = {rec.mean - 1.96 * rec.stderr_, rec.mean + 1.96 * rec.stderr_};
  return rec;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      threads <= 1 ? 1
                   : std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fpplab
