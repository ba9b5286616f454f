#pragma once

#include <optional>
#include <string_view>

#include "ofa/distribution.hpp"

namespace ofa {

/// Auction terms. `alpha` is the share of the winning bid paid up front,
/// `p` the probability the order executes regardless of the winner, `q` the
/// probability it fails regardless of the winner.
struct AuctionParams {
  double strike = 0.5;
  double alpha = 1.0;
  double p = 0.0;
  double q = 0.0;

  /// Effective strike seen by the winner: strike + (1 - alpha) * bid.
  double threshold(double bid) const { return strike + (1.0 - alpha) * bid; }
};

/// Throws InvalidParams when the terms are malformed, or when the strike is
/// at or above the top of the support with no forced execution (the order
/// can never be worth anything).
void validate(const Distribution& d, const AuctionParams& params);

enum class SolveStatus { interior_root, boundary_zero_bid, boundary_full_erosion };

std::string_view to_string(SolveStatus s);

struct EquilibriumSolution {
  double b_star = 0.0;
  double threshold = 0.0;
  double p_exec = 0.0;
  /// Empty when execution has probability zero.
  std::optional<double> effective_spread;
  double revenue = 0.0;
  /// Winner's expected utility at b_star.
  double residual = 0.0;
  SolveStatus status = SolveStatus::interior_root;
};

inline constexpr double kDefaultTolerance = 1e-12;

/// Winner's expected utility for bid b:
///   p (E[S] - K - (1-alpha) b) + (1-p-q) E[max(S - T, 0)] - alpha b
/// with T = K + (1-alpha) b.
double expected_utility(const Distribution& d, const AuctionParams& params, double b);

/// Zero-profit bid by bisection on expected_utility.
///
/// alpha = 0 with p = 0 is returned analytically as b* = hi - K
/// (utility is nonnegative with its only zero at that endpoint). When the
/// utility of a zero bid is already nonpositive the bid is 0. Otherwise the
/// bracket [0, B] is bisected down to adjacent doubles, expanding B by
/// doubling if needed.
///
/// Throws InvalidParams (see validate), DomainError for tol <= 0, and
/// NumericFailure if no bracket is found or the final residual exceeds tol.
EquilibriumSolution solve_equilibrium(const Distribution& d, const AuctionParams& params,
                                      double tol = kDefaultTolerance);

/// p + (1-p-q) (1 - F(K + (1-alpha) b)).
double execution_probability(const Distribution& d, const AuctionParams& params, double b);

/// E[S - K | executed], or empty when execution has probability zero.
std::optional<double> effective_spread(const Distribution& d, const AuctionParams& params,
                                       double b);

/// Upfront payment plus the contingent payment weighted by execution
/// probability: alpha b + (1-alpha) b p_exec.
double revenue(const AuctionParams& params, double b, double p_exec);

}  // namespace ofa
