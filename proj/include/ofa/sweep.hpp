#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ofa/distribution.hpp"
#include "ofa/equilibrium.hpp"

namespace ofa {

struct SweepRow {
  double alpha = 0.0;
  double b_star = 0.0;
  double threshold = 0.0;
  double p_exec = 0.0;
  std::optional<double> effective_spread;
  double revenue = 0.0;
  double residual = 0.0;
  SolveStatus status = SolveStatus::interior_root;
};

/// `points` evenly spaced values from start to stop inclusive. The last
/// point is exactly `stop`. Throws DomainError unless
/// 0 <= start < stop <= 1 and points >= 2.
std::vector<double> alpha_grid(double start, double stop, int points);

/// Solves the equilibrium at each alpha (other terms from `base`). Rows
/// are computed in parallel and returned in grid order.
std::vector<SweepRow> sweep_alpha(const Distribution& d, const AuctionParams& base,
                                  const std::vector<double>& alphas,
                                  double tol = kDefaultTolerance);

/// Serial reference for sweep_alpha.
std::vector<SweepRow> sweep_alpha_serial(const Distribution& d, const AuctionParams& base,
                                         const std::vector<double>& alphas,
                                         double tol = kDefaultTolerance);

}  // namespace ofa
