#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "ofa/rng.hpp"

namespace ofa {

/// Compact support [lo, hi] of the reference price.
struct SupportInterval {
  double lo;
  double hi;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Law of the post-auction reference price.
///
/// Evaluation is pure and safe to call concurrently. `sample` mutates only
/// the caller's engine.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual SupportInterval support() const = 0;
  /// P(S <= x); 0 below the support and 1 above it.
  virtual double cdf(double x) const = 0;
  /// Density; 0 outside the support.
  virtual double pdf(double x) const = 0;
  virtual double mean() const = 0;
  /// Upper partial expectation: integral of x f(x) over [max(t, lo), hi].
  virtual double partial_expectation(double t) const = 0;
  /// One draw. The default is inverse-CDF: a single unit uniform, inverted
  /// by safeguarded Newton iteration to 1e-12.
  virtual double sample(Rng& rng) const;

  /// E[max(S - t, 0)].
  double call_value(double t) const;
  /// Inverse CDF on (0, 1).
  double quantile(double u) const;
  /// Short textual form, e.g. "uniform:0,1".
  virtual std::string describe() const = 0;
};

class UniformDistribution final : public Distribution {
 public:
  /// Throws DomainError unless lo < hi and both are finite.
  UniformDistribution(double lo, double hi);

  SupportInterval support() const override { return {lo_, hi_}; }
  double cdf(double x) const override;
  double pdf(double x) const override;
  double mean() const override { return 0.5 * (lo_ + hi_); }
  double partial_expectation(double t) const override;
  double sample(Rng& rng) const override;
  std::string describe() const override;

 private:
  double lo_;
  double hi_;
};

/// Beta(a, b) on [0, 1].
class BetaDistribution final : public Distribution {
 public:
  /// Throws DomainError unless both shapes are positive and finite.
  BetaDistribution(double shape_a, double shape_b);

  SupportInterval support() const override { return {0.0, 1.0}; }
  double cdf(double x) const override;
  double pdf(double x) const override;
  double mean() const override { return a_ / (a_ + b_); }
  double partial_expectation(double t) const override;
  std::string describe() const override;

  double shape_a() const { return a_; }
  double shape_b() const { return b_; }

 private:
  double a_;
  double b_;
  double log_norm_;
};

/// Any law given by a density on a compact interval. CDF, mean and partial
/// expectation come from adaptive quadrature (absolute tolerance 1e-12);
/// the density need not be normalized.
class QuadratureDistribution final : public Distribution {
 public:
  QuadratureDistribution(SupportInterval support,
                         std::function<double(double)> density,
                         std::string label = "custom");

  SupportInterval support() const override { return support_; }
  double cdf(double x) const override;
  double pdf(double x) const override;
  double mean() const override { return mean_; }
  double partial_expectation(double t) const override;
  std::string describe() const override { return label_; }

 private:
  SupportInterval support_;
  std::function<double(double)> density_;
  std::string label_;
  double norm_;
  double mean_;
};

/// Parsed form of `uniform:<lo>,<hi>` or `beta:<a>,<b>`.
struct DistributionSpec {
  enum class Kind { uniform, beta };

  Kind kind;
  double first;
  double second;

  /// Throws DomainError on malformed text or invalid parameters.
  static DistributionSpec parse(std::string_view text);
  std::string to_string() const;
  std::unique_ptr<Distribution> build() const;
};

}  // namespace ofa
