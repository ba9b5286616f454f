#include "ofa/special_functions.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ofa/errors.hpp"

namespace ofa {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kStop = 1e-16;
constexpr int kMaxTerms = 2000;

double lgamma_threadsafe(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Continued fraction for I_x(a, b) / front, valid (and fast) when
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    // even step
    double num = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    // odd step
    num = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kStop) return h;
  }
  throw NumericFailure(
      fmt::format("incomplete beta continued fraction did not converge (a={}, b={}, x={})", a, b,
                  x));
}

}  // namespace

double log_beta(double a, double b) {
  return lgamma_threadsafe(a) + lgamma_threadsafe(b) - lgamma_threadsafe(a + b);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !(x >= 0.0) ||
      !(x <= 1.0)) {
    throw DomainError(fmt::format("regularized_incomplete_beta: invalid arguments a={}, b={}, x={}",
                                  a, b, x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const bool flip = x > (a + 1.0) / (a + b + 2.0);
  const double aa = flip ? b : a;
  const double bb = flip ? a : b;
  const double xx = flip ? 1.0 - x : x;

  const double log_front = aa * std::log(xx) + bb * std::log1p(-xx) - log_beta(aa, bb);
  const double value = std::exp(log_front) * beta_continued_fraction(aa, bb, xx) / aa;
  return flip ? 1.0 - value : value;
}

}  // namespace ofa
