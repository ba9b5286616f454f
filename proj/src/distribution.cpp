#include "ofa/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ofa/errors.hpp"
#include "ofa/quadrature.hpp"
#include "ofa/special_functions.hpp"

namespace ofa {

double Distribution::call_value(double t) const {
  return partial_expectation(t) - t * (1.0 - cdf(t));
}

double Distribution::quantile(double u) const {
  const auto [lo, hi] = support();
  if (u <= 0.0) return lo;
  if (u >= 1.0) return hi;

  double left = lo;
  double right = hi;
  double x = std::clamp(mean(), lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = cdf(x) - u;
    if (f == 0.0) return x;
    if (f < 0.0) {
      left = x;
    } else {
      right = x;
    }
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    if (right - left <= 2.0 * kEps * std::max(std::abs(left), std::abs(right))) break;
    const double density = pdf(x);
    double next = density > 0.0 && std::isfinite(density) ? x - f / density : left - 1.0;
    if (!(next > left && next < right)) next = 0.5 * (left + right);
    if (std::abs(next - x) <= kEps * std::abs(x)) return next;
    x = next;
  }
  return 0.5 * (left + right);
}

double Distribution::sample(Rng& rng) const { return quantile(unit_uniform(rng)); }

// ---- uniform ----

UniformDistribution::UniformDistribution(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError(fmt::format("uniform law needs finite lo < hi (got {}, {})", lo, hi));
  }
}

double UniformDistribution::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return (x - lo_) / (hi_ - lo_);
}

double UniformDistribution::pdf(double x) const {
  return (x < lo_ || x > hi_) ? 0.0 : 1.0 / (hi_ - lo_);
}

double UniformDistribution::partial_expectation(double t) const {
  if (t <= lo_) return mean();
  if (t >= hi_) return 0.0;
  return (hi_ - t) * (hi_ + t) / (2.0 * (hi_ - lo_));
}

double UniformDistribution::sample(Rng& rng) const {
  return lo_ + (hi_ - lo_) * unit_uniform(rng);
}

std::string UniformDistribution::describe() const {
  return fmt::format("uniform:{},{}", lo_, hi_);
}

// ---- beta ----

BetaDistribution::BetaDistribution(double shape_a, double shape_b)
    : a_(shape_a), b_(shape_b) {
  if (!(shape_a > 0.0) || !(shape_b > 0.0) || !std::isfinite(shape_a) ||
      !std::isfinite(shape_b)) {
    throw DomainError(
        fmt::format("beta law needs positive finite shapes (got {}, {})", shape_a, shape_b));
  }
  log_norm_ = log_beta(a_, b_);
}

double BetaDistribution::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return regularized_incomplete_beta(a_, b_, x);
}

double BetaDistribution::pdf(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  const auto edge = [this](double shape) {
    if (shape < 1.0) return std::numeric_limits<double>::infinity();
    return shape == 1.0 ? std::exp(-log_norm_) : 0.0;
  };
  if (x == 0.0) return edge(a_);
  if (x == 1.0) return edge(b_);
  return std::exp((a_ - 1.0) * std::log(x) + (b_ - 1.0) * std::log1p(-x) - log_norm_);
}

double BetaDistribution::partial_expectation(double t) const {
  if (t <= 0.0) return mean();
  if (t >= 1.0) return 0.0;
  // x f(x; a, b) = mean * f(x; a + 1, b)
  return mean() * (1.0 - regularized_incomplete_beta(a_ + 1.0, b_, t));
}

std::string BetaDistribution::describe() const { return fmt::format("beta:{},{}", a_, b_); }

// ---- quadrature-backed ----

QuadratureDistribution::QuadratureDistribution(SupportInterval support,
                                               std::function<double(double)> density,
                                               std::string label)
    : support_(support), density_(std::move(density)), label_(std::move(label)) {
  if (!std::isfinite(support.lo) || !std::isfinite(support.hi) || !(support.lo < support.hi)) {
    throw DomainError("quadrature law needs a finite support with lo < hi");
  }
  norm_ = adaptive_simpson(density_, support_.lo, support_.hi);
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
    throw DomainError("quadrature law density must have positive finite mass");
  }
  mean_ = adaptive_simpson([this](double x) { return x * density_(x); }, support_.lo,
                           support_.hi) /
          norm_;
}

double QuadratureDistribution::cdf(double x) const {
  if (x <= support_.lo) return 0.0;
  if (x >= support_.hi) return 1.0;
  return std::clamp(adaptive_simpson(density_, support_.lo, x) / norm_, 0.0, 1.0);
}

double QuadratureDistribution::pdf(double x) const {
  return support_.contains(x) ? density_(x) / norm_ : 0.0;
}

double QuadratureDistribution::partial_expectation(double t) const {
  if (t <= support_.lo) return mean_;
  if (t >= support_.hi) return 0.0;
  return adaptive_simpson([this](double x) { return x * density_(x); }, t, support_.hi) / norm_;
}

// ---- spec strings ----

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw DomainError(fmt::format("bad number '{}' in distribution '{}'", text, whole));
  }
  return value;
}

}  // namespace

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError(fmt::format("distribution '{}' must look like kind:x,y", text));
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  const auto comma = args.find(',');
  if (comma == std::string_view::npos) {
    throw DomainError(fmt::format("distribution '{}' needs two parameters", text));
  }
  DistributionSpec spec{};
  spec.first = parse_real(args.substr(0, comma), text);
  spec.second = parse_real(args.substr(comma + 1), text);
  if (kind == "uniform") {
    spec.kind = Kind::uniform;
  } else if (kind == "beta") {
    spec.kind = Kind::beta;
  } else {
    throw DomainError(fmt::format("unknown distribution kind '{}'", kind));
  }
  spec.build();  // validates parameters
  return spec;
}

std::string DistributionSpec::to_string() const {
  return fmt::format("{}:{},{}", kind == Kind::uniform ? "uniform" : "beta", first, second);
}

std::unique_ptr<Distribution> DistributionSpec::build() const {
  if (kind == Kind::uniform) return std::make_unique<UniformDistribution>(first, second);
  return std::make_unique<BetaDistribution>(first, second);
}

}  // namespace ofa
