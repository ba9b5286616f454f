#pragma once

// Internal: one play of the winner's problem, shared by the parallel and
// serial simulators and by calibration so all three agree on the rules.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>

#include "ofa/distribution.hpp"
#include "ofa/equilibrium.hpp"
#include "ofa/rng.hpp"
#include "ofa/simulate.hpp"

namespace ofa::detail {

struct TrialDraw {
  double branch;  // decides forced execution / forced failure / choice
  double price;   // S
};

inline TrialDraw draw_trial(const Distribution& d, Rng& rng) {
  const double branch = unit_uniform(rng);
  const double price = d.sample(rng);
  return {branch, price};
}

struct TrialOutcome {
  bool executed;
  double utility;
  double revenue;
};

inline TrialOutcome play_trial(const TrialDraw& draw, const AuctionParams& params, double bid) {
  const double upfront = params.alpha * bid;
  const double contingent = (1.0 - params.alpha) * bid;
  const double gain = draw.price - params.strike;
  bool executed = false;
  if (draw.branch < params.p) {
    executed = true;
  } else if (draw.branch < params.p + params.q) {
    executed = false;
  } else {
    // Ties go to not executing.
    executed = gain - contingent > 0.0;
  }
  if (!executed) return {false, -upfront, upfront};
  return {true, gain - contingent - upfront, upfront + contingent};
}

inline std::uint64_t chunk_count(std::uint64_t n_trials) {
  return (n_trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

inline std::uint64_t chunk_size(std::uint64_t n_trials, std::uint64_t chunk) {
  return std::min(kTrialsPerChunk, n_trials - chunk * kTrialsPerChunk);
}

/// Collects the first exception thrown inside an OpenMP region so it can be
/// rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

/// Merges items[first, last) by recursive halving. The tree shape depends
/// only on the range, never on scheduling.
template <class T, class Merge>
T pairwise_reduce(const T* items, std::size_t first, std::size_t last, Merge merge) {
  if (last - first == 1) return items[first];
  const std::size_t mid = first + (last - first) / 2;
  T left = pairwise_reduce(items, first, mid, merge);
  merge(left, pairwise_reduce(items, mid, last, merge));
  return left;
}

}  // namespace ofa::detail
