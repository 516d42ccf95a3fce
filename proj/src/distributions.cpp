#include "fpplab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fpplab/quadrature.hpp"

namespace fpplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(const std::string& token, const std::string& spec) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad distribution spec '" + spec + "': '" + token +
                                "' is not a number");
  }
  if (pos != token.size())
    throw std::invalid_argument("bad distribution spec '" + spec + "': '" + token +
                                "' is not a number");
  return v;
}
}  // namespace

WeightDistribution::WeightDistribution(DistKind kind, double a, double b, double c)
    : kind_(kind), a_(a), b_(b), c_(c) {
  switch (kind_) {
    case DistKind::uniform:
      if (!(a_ < b_)) throw std::invalid_argument("uniform: requires lo < hi");
      if (a_ < 0) throw std::invalid_argument("uniform: requires lo >= 0");
      lo_ = a_;
      hi_ = b_;
      break;
    case DistKind::shifted_exponential:
      if (!(b_ > 0)) throw std::invalid_argument("shiftexp: requires rate > 0");
      if (a_ < 0) throw std::invalid_argument("shiftexp: requires shift >= 0");
      lo_ = a_;
      hi_ = kInf;
      break;
    case DistKind::triangular:
      if (!(a_ < c_)) throw std::invalid_argument("tri: requires lo < hi");
      if (!(a_ <= b_ && b_ <= c_))
        throw std::invalid_argument("tri: requires lo <= mode <= hi");
      if (a_ < 0) throw std::invalid_argument("tri: requires lo >= 0");
      lo_ = a_;
      hi_ = c_;
      break;
  }
}

WeightDistribution WeightDistribution::uniform(double lo, double hi) {
  return {DistKind::uniform, lo, hi, 0};
}

WeightDistribution WeightDistribution::shifted_exponential(double shift, double rate) {
  return {DistKind::shifted_exponential, shift, rate, 0};
}

WeightDistribution WeightDistribution::triangular(double lo, double mode, double hi) {
  return {DistKind::triangular, lo, mode, hi};
}

WeightDistribution WeightDistribution::parse(std::string_view spec) {
  const std::string s{spec};
  std::vector<std::string> tok;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) tok.push_back(part);
  if (tok.empty()) throw std::invalid_argument("bad distribution spec: empty string");
  if (tok[0] == "uniform") {
    if (tok.size() != 3)
      throw std::invalid_argument("bad distribution spec '" + s + "': want uniform:lo:hi");
    return uniform(parse_number(tok[1], s), parse_number(tok[2], s));
  }
  if (tok[0] == "shiftexp") {
    if (tok.size() != 3)
      throw std::invalid_argument("bad distribution spec '" + s + "': want shiftexp:shift:rate");
    return shifted_exponential(parse_number(tok[1], s), parse_number(tok[2], s));
  }
  if (tok[0] == "tri") {
    if (tok.size() != 4)
      throw std::invalid_argument("bad distribution spec '" + s + "': want tri:lo:mode:hi");
    return triangular(parse_number(tok[1], s), parse_number(tok[2], s),
                      parse_number(tok[3], s));
  }
  throw std::invalid_argument("bad distribution spec '" + s +
                              "': unknown family '" + tok[0] + "'");
}

std::string WeightDistribution::spec() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case DistKind::uniform: os << "uniform:" << a_ << ":" << b_; break;
    case DistKind::shifted_exponential: os << "shiftexp:" << a_ << ":" << b_; break;
    case DistKind::triangular: os << "tri:" << a_ << ":" << b_ << ":" << c_; break;
  }
  return os.str();
}

double WeightDistribution::density(double w) const {
  switch (kind_) {
    case DistKind::uniform:
      return (w >= a_ && w <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case DistKind::shifted_exponential:
      return w >= a_ ? b_ * std::exp(-b_ * (w - a_)) : 0.0;
    case DistKind::triangular: {
      if (w < a_ || w > c_) return 0.0;
      const double span = c_ - a_;
      if (w <= b_)
        return b_ == a_ ? 2.0 / span : 2.0 * (w - a_) / (span * (b_ - a_));
      return b_ == c_ ? 2.0 / span : 2.0 * (c_ - w) / (span * (c_ - b_));
    }
  }
  return 0.0;
}

double WeightDistribution::cdf(double w) const {
  if (w <= lo_) return 0.0;
  if (w >= hi_) return 1.0;
  switch (kind_) {
    case DistKind::uniform:
      return (w - a_) / (b_ - a_);
    case DistKind::shifted_exponential:
      return -std::expm1(-b_ * (w - a_));
    case DistKind::triangular: {
      const double span = c_ - a_;
      if (w <= b_) return (w - a_) * (w - a_) / (span * (b_ - a_));
      const double t = (c_ - w) * (c_ - w) / (span * (c_ - b_));
      return 1.0 - t;
    }
  }
  return 0.0;
}

double WeightDistribution::cdf_complement(double w) const {
  if (w <= lo_) return 1.0;
  if (w >= hi_) return 0.0;
  switch (kind_) {
    case DistKind::uniform:
      return (b_ - w) / (b_ - a_);
    case DistKind::shifted_exponential:
      return std::exp(-b_ * (w - a_));
    case DistKind::triangular: {
      const double span = c_ - a_;
      if (w >= b_) return (c_ - w) * (c_ - w) / (span * (c_ - b_));
      return 1.0 - (w - a_) * (w - a_) / (span * (b_ - a_));
    }
  }
  return 0.0;
}

double WeightDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("quantile: p outside [0,1]");
  if (p == 0.0) return lo_;
  if (p == 1.0) return hi_;
  switch (kind_) {
    case DistKind::uniform:
      return a_ + p * (b_ - a_);
    case DistKind::shifted_exponential:
      return a_ - std::log1p(-p) / b_;
    case DistKind::triangular: {
      const double span = c_ - a_;
      const double pm = (b_ - a_) / span;
      if (p <= pm) return a_ + std::sqrt(p * span * (b_ - a_));
      return c_ - std::sqrt((1.0 - p) * span * (c_ - b_));
    }
  }
  return lo_;
}

double WeightDistribution::quantile_complement(double q) const {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("quantile_complement: q outside [0,1]");
  if (q == 0.0) return hi_;
  if (q == 1.0) return lo_;
  switch (kind_) {
    case DistKind::uniform:
      return b_ - q * (b_ - a_);
    case DistKind::shifted_exponential:
      return a_ - std::log(q) / b_;
    case DistKind::triangular: {
      const double span = c_ - a_;
      const double qm = (c_ - b_) / span;
      if (q <= qm) return c_ - std::sqrt(q * span * (c_ - b_));
      return a_ + std::sqrt((1.0 - q) * span * (b_ - a_));
    }
  }
  return hi_;
}

std::vector<double> WeightDistribution::density_breakpoints() const {
  if (kind_ == DistKind::triangular && b_ > a_ && b_ < c_) return {b_};
  return {};
}

double nu_measure(const WeightDistribution& dist, const IntervalUnion& set,
                  double tol) {
  // Truncate unbounded supports where the tail mass drops below tol.
  const double hi_cut = std::isinf(dist.support_hi())
                            ? dist.quantile_complement(std::min(tol, 1e-13))
                            : dist.support_hi();
  const auto breaks = dist.density_breakpoints();
  const auto f = [&dist](double w) { return dist.density(w); };
  double total = 0.0;
  for (const auto& [a0, b0] : set.parts) {
    const double a = std::max(a0, dist.support_lo());
    const double b = std::min(b0, hi_cut);
    if (!(a < b)) continue;
    // Split at density breakpoints so each quadrature piece is smooth.
    std::vector<double> cuts{a};
    for (double c : breaks)
      if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += integrate(f, cuts[i], cuts[i + 1], tol);
  }
  return total;
}

double nu_measure_cdf(const WeightDistribution& dist, const IntervalUnion& set) {
  const double median = dist.quantile(0.5);
  double total = 0.0;
  for (const auto& [a, b] : set.parts) {
    if (!(a < b)) continue;
    if (a >= median) {
      // Difference of upper tails is stable when both endpoints are high.
      total += dist.cdf_complement(a) - dist.cdf_complement(b);
    } else {
      total += dist.cdf(b) - dist.cdf(a);
    }
  }
  return total;
}

}  // namespace fpplab
