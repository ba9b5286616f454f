#pragma once

#include <cstdint>
#include <optional>

#include "ofa/distribution.hpp"
#include "ofa/equilibrium.hpp"

namespace ofa {

struct SimConfig {
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 42;
  double bid = 0.0;
};

struct SimResult {
  std::uint64_t n_trials = 0;
  double mean_utility = 0.0;
  double se_utility = 0.0;
  double exec_rate = 0.0;
  double se_exec = 0.0;
  double mean_revenue = 0.0;
  double se_revenue = 0.0;
  /// Mean of S - K over executed trials; empty when nothing executed.
  std::optional<double> mean_spread_given_exec;
  double se_spread = 0.0;
  std::uint64_t n_exec = 0;
};

/// Trials are generated in fixed-size chunks, chunk c drawing from
/// make_stream(seed, c). Results do not depend on the thread count.
inline constexpr std::uint64_t kTrialsPerChunk = 1u << 16;

/// Monte Carlo play of the winner's problem at a fixed bid.
///
/// Each trial: the winner pays alpha * bid; one uniform u selects forced
/// execution (u < p), forced failure (u < p + q) or the winner's choice, and
/// an independent draw gives S. By choice the winner executes iff
/// S - K - (1-alpha) bid > 0. On execution the winner pays (1-alpha) bid
/// and receives S - K.
///
/// Chunks run under OpenMP; per-chunk moments are merged in a fixed
/// pairwise order, so output is bit-identical for any thread count.
/// Throws InvalidParams as validate() does, or for n_trials == 0.
SimResult simulate_auction(const Distribution& d, const AuctionParams& params,
                           const SimConfig& cfg);

/// Single-threaded reference with plain extended-precision sums. Draws the
/// same trials as simulate_auction; means agree to rounding.
SimResult simulate_auction_serial(const Distribution& d, const AuctionParams& params,
                                  const SimConfig& cfg);

struct Calibration {
  double bid = 0.0;
  /// Delta-method standard error of the bid: se of the empirical utility
  /// divided by the magnitude of its slope in the bid.
  double se_bid = 0.0;
  double mean_utility = 0.0;
  double se_utility = 0.0;
  double exec_rate = 0.0;
  int evaluations = 0;
};

/// Empirical zero-profit bid. One set of trials is drawn up front (common
/// random numbers), which makes the empirical utility a deterministic,
/// strictly decreasing, piecewise-linear function of the bid; bisection
/// then locates its zero.
///
/// Requires alpha > 0 or p > 0 (InvalidParams otherwise). Throws
/// NumericFailure if no sign change is found.
Calibration calibrate_zero_profit_bid(const Distribution& d, const AuctionParams& params,
                                      std::uint64_t n_per_eval, std::uint64_t seed);

}  // namespace ofa
