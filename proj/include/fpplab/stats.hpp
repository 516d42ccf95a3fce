#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpplab {

/// Thrown when a pathwise certificate fails: a quantity the coupling or
/// subadditivity makes exact came out violated beyond tolerance.
class CertificateError : public std::runtime_error {
 public:
  explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

/// Sums values[first, last) by recursive halving. The result depends only
/// on the index order, never on how replicates were scheduled.
double pairwise_sum(const std::vector<double>& values);

struct EstimateRecord {
  std::string observable;
  int n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  int replicates = 0;
  std::uint64_t master_seed = 0;
};

/// Mean, stderr = sample sd / sqrt(count), ci95 = mean +- 1.96 stderr.
/// A single replicate gets stderr 0.
EstimateRecord summarize(const std::string& observable, int n,
                         const std::vector<double>& values,
                         std::uint64_t master_seed);

/// Runs body(i) for i in [0, count) on up to `threads` workers in
/// contiguous chunks. The first exception thrown by any worker is
/// rethrown on the caller. threads <= 1 runs inline.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace fpplab
