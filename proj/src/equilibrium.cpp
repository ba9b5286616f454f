#include "ofa/equilibrium.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ofa/errors.hpp"

namespace ofa {
namespace {

constexpr int kMaxDoublings = 64;
constexpr int kMaxBisections = 4096;

void check_bid(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw DomainError(fmt::format("bid must be finite and nonnegative (got {})", b));
  }
}

// Probability that the winner gets to choose.
double choice_weight(const AuctionParams& params) { return 1.0 - params.p - params.q; }

}  // namespace

void validate(const Distribution& d, const AuctionParams& params) {
  const auto& [strike, alpha, p, q] = params;
  if (!std::isfinite(strike)) throw InvalidParams("strike must be finite");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParams(fmt::format("alpha must lie in [0, 1] (got {})", alpha));
  }
  if (!(p >= 0.0) || !(q >= 0.0) || !(p + q <= 1.0)) {
    throw InvalidParams(fmt::format("need p >= 0, q >= 0, p + q <= 1 (got p={}, q={})", p, q));
  }
  const double hi = d.support().hi;
  if (strike >= hi && p == 0.0) {
    throw InvalidParams(fmt::format(
        "strike {} is at or above the top of the support {}: the order is never worth executing",
        strike, hi));
  }
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::interior_root:
      return "interior_root";
    case SolveStatus::boundary_zero_bid:
      return "boundary_zero_bid";
    case SolveStatus::boundary_full_erosion:
      return "boundary_full_erosion";
  }
  return "unknown";
}

double expected_utility(const Distribution& d, const AuctionParams& params, double b) {
  check_bid(b);
  const double contingent = (1.0 - params.alpha) * b;
  double utility = -params.alpha * b;
  if (params.p > 0.0) utility += params.p * (d.mean() - params.strike - contingent);
  const double w = choice_weight(params);
  if (w > 0.0) utility += w * d.call_value(params.strike + contingent);
  return utility;
}

double execution_probability(const Distribution& d, const AuctionParams& params, double b) {
  check_bid(b);
  return params.p + choice_weight(params) * (1.0 - d.cdf(params.threshold(b)));
}

std::optional<double> effective_spread(const Distribution& d, const AuctionParams& params,
                                       double b) {
  const double p_exec = execution_probability(d, params, b);
  if (!(p_exec > 0.0)) return std::nullopt;
  const double t = params.threshold(b);
  const double k = params.strike;
  double gain = 0.0;
  if (params.p > 0.0) gain += params.p * (d.mean() - k);
  const double w = choice_weight(params);
  if (w > 0.0) gain += w * (d.partial_expectation(t) - k * (1.0 - d.cdf(t)));
  return gain / p_exec;
}

double revenue(const AuctionParams& params, double b, double p_exec) {
  check_bid(b);
  return params.alpha * b + (1.0 - params.alpha) * b * p_exec;
}

EquilibriumSolution solve_equilibrium(const Distribution& d, const AuctionParams& params,
                                      double tol) {
  validate(d, params);
  if (!(tol > 0.0)) throw DomainError(fmt::format("tolerance must be positive (got {})", tol));

  const auto [lo, hi] = d.support();
  const auto finish = [&](double b, double residual, SolveStatus status) {
    EquilibriumSolution s;
    s.b_star = b;
    s.threshold = params.threshold(b);
    s.p_exec = execution_probability(d, params, b);
    s.effective_spread = effective_spread(d, params, b);
    s.revenue = revenue(params, b, s.p_exec);
    s.residual = residual;
    s.status = status;
    return s;
  };

  // Purely contingent payment: the bid rises until it absorbs the whole
  // upside of the option.
  if (params.alpha == 0.0 && params.p == 0.0) {
    const double b = hi - params.strike;
    return finish(b, expected_utility(d, params, b), SolveStatus::boundary_full_erosion);
  }

  const double u0 = expected_utility(d, params, 0.0);
  if (u0 <= 0.0) return finish(0.0, u0, SolveStatus::boundary_zero_bid);

  double upper = 0.0;
  if (params.p == 0.0 && params.alpha < 1.0) {
    upper = (hi - params.strike) / (1.0 - params.alpha);
  } else {
    upper = std::max(hi - params.strike, hi - lo);
  }
  double u_upper = expected_utility(d, params, upper);
  for (int i = 0; u_upper > 0.0; ++i) {
    if (i == kMaxDoublings) {
      throw NumericFailure(fmt::format("no sign change of expected utility on [0, {}]", upper));
    }
    upper *= 2.0;
    u_upper = expected_utility(d, params, upper);
  }

  // Invariant: utility(left) > 0 >= utility(right).
  double left = 0.0;
  double right = upper;
  double u_left = u0;
  double u_right = u_upper;
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = left + 0.5 * (right - left);
    if (mid <= left || mid >= right) break;
    const double u_mid = expected_utility(d, params, mid);
    if (u_mid > 0.0) {
      left = mid;
      u_left = u_mid;
    } else {
      right = mid;
      u_right = u_mid;
    }
    if (u_mid == 0.0) break;
  }
  const bool take_left = std::abs(u_left) < std::abs(u_right);
  const double b = take_left ? left : right;
  const double residual = take_left ? u_left : u_right;
  if (!(std::abs(residual) <= tol)) {
    throw NumericFailure(
        fmt::format("bisection stalled with residual {} above tolerance {}", residual, tol));
  }
  return finish(b, residual, SolveStatus::interior_root);
}

}  // namespace ofa
