#include "ofa/sweep.hpp"

#include <cstdint>

#include <fmt/format.h>

#include "ofa/errors.hpp"
#include "trial_kernel.hpp"

namespace ofa {
namespace {

SweepRow solve_row(const Distribution& d, AuctionParams params, double alpha, double tol) {
  params.alpha = alpha;
  const EquilibriumSolution s = solve_equilibrium(d, params, tol);
  return {alpha, s.b_star, s.threshold, s.p_exec, s.effective_spread, s.revenue, s.residual,
          s.status};
}

}  // namespace

std::vector<double> alpha_grid(double start, double stop, int points) {
  if (!(start >= 0.0 && start < stop && stop <= 1.0) || points < 2) {
    throw DomainError(fmt::format(
        "alpha grid needs 0 <= start < stop <= 1 and at least 2 points (got {},{},{})", start,
        stop, points));
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
  }
  grid.back() = stop;
  return grid;
}

std::vector<SweepRow> sweep_alpha(const Distribution& d, const AuctionParams& base,
                                  const std::vector<double>& alphas, double tol) {
  std::vector<SweepRow> rows(alphas.size());
  detail::ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(alphas.size()); ++i) {
    errors.run([&] {
      const auto k = static_cast<std::size_t>(i);
      rows[k] = solve_row(d, base, alphas[k], tol);
    });
  }
  errors.rethrow();
  return rows;
}

std::vector<SweepRow> sweep_alpha_serial(const Distribution& d, const AuctionParams& base,
                                         const std::vector<double>& alphas, double tol) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (const double alpha : alphas) rows.push_back(solve_row(d, base, alpha, tol));
  return rows;
}

}  // namespace ofa
