#include "ofa/simulate.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "ofa/errors.hpp"
#include "ofa/moments.hpp"
#include "trial_kernel.hpp"

namespace ofa {
namespace {

struct ChunkStats {
  RunningMoments utility;
  RunningMoments executed;
  RunningMoments revenue;
  RunningMoments spread;

  void merge(const ChunkStats& o) {
    utility.merge(o.utility);
    executed.merge(o.executed);
    revenue.merge(o.revenue);
    spread.merge(o.spread);
  }
};

ChunkStats reduce(const std::vector<ChunkStats>& chunks) {
  if (chunks.empty()) return {};
  return detail::pairwise_reduce(chunks.data(), 0, chunks.size(),
                                 [](ChunkStats& a, const ChunkStats& b) { a.merge(b); });
}

void check_inputs(const Distribution& d, const AuctionParams& params, std::uint64_t n) {
  validate(d, params);
  if (n == 0) throw InvalidParams("need at least one trial");
}

// Upper end of the initial bid bracket; mirrors solve_equilibrium.
double initial_upper_bid(const Distribution& d, const AuctionParams& params) {
  const auto [lo, hi] = d.support();
  if (params.p == 0.0 && params.alpha < 1.0) return (hi - params.strike) / (1.0 - params.alpha);
  return std::max(hi - params.strike, hi - lo);
}

}  // namespace

SimResult simulate_auction(const Distribution& d, const AuctionParams& params,
                           const SimConfig& cfg) {
  check_inputs(d, params, cfg.n_trials);
  if (!(cfg.bid >= 0.0) || !std::isfinite(cfg.bid)) {
    throw InvalidParams(fmt::format("bid must be finite and nonnegative (got {})", cfg.bid));
  }

  const std::uint64_t n_chunks = detail::chunk_count(cfg.n_trials);
  std::vector<ChunkStats> chunks(n_chunks);
  detail::ExceptionSlot errors;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    errors.run([&] {
      const auto chunk = static_cast<std::uint64_t>(c);
      Rng rng = make_stream(cfg.seed, chunk);
      ChunkStats& st = chunks[chunk];
      const std::uint64_t size = detail::chunk_size(cfg.n_trials, chunk);
      for (std::uint64_t i = 0; i < size; ++i) {
        const auto draw = detail::draw_trial(d, rng);
        const auto out = detail::play_trial(draw, params, cfg.bid);
        st.utility.add(out.utility);
        st.executed.add(out.executed ? 1.0 : 0.0);
        st.revenue.add(out.revenue);
        if (out.executed) st.spread.add(draw.price - params.strike);
      }
    });
  }
  errors.rethrow();

  const ChunkStats total = reduce(chunks);
  SimResult r;
  r.n_trials = cfg.n_trials;
  r.mean_utility = total.utility.mean;
  r.se_utility = total.utility.std_error();
  r.exec_rate = total.executed.mean;
  r.se_exec = total.executed.std_error();
  r.mean_revenue = total.revenue.mean;
  r.se_revenue = total.revenue.std_error();
  r.n_exec = total.spread.count;
  if (r.n_exec > 0) {
    r.mean_spread_given_exec = total.spread.mean;
    r.se_spread = total.spread.std_error();
  }
  return r;
}

Calibration calibrate_zero_profit_bid(const Distribution& d, const AuctionParams& params,
                                      std::uint64_t n_per_eval, std::uint64_t seed) {
  check_inputs(d, params, n_per_eval);
  if (!(params.alpha > 0.0 || params.p > 0.0)) {
    throw InvalidParams("calibration needs alpha > 0 or p > 0");
  }

  // Common random numbers: every evaluation replays the same trials.
  const std::uint64_t n_chunks = detail::chunk_count(n_per_eval);
  std::vector<detail::TrialDraw> draws(n_per_eval);
  detail::ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    errors.run([&] {
      const auto chunk = static_cast<std::uint64_t>(c);
      Rng rng = make_stream(seed, chunk);
      const std::uint64_t begin = chunk * kTrialsPerChunk;
      const std::uint64_t size = detail::chunk_size(n_per_eval, chunk);
      for (std::uint64_t i = 0; i < size; ++i) draws[begin + i] = detail::draw_trial(d, rng);
    });
  }
  errors.rethrow();

  struct Eval {
    RunningMoments utility;
    RunningMoments executed;
  };
  int evaluations = 0;
  std::vector<Eval> partial(n_chunks);
  const auto evaluate = [&](double bid) {
    ++evaluations;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      const auto chunk = static_cast<std::uint64_t>(c);
      Eval e;
      const std::uint64_t begin = chunk * kTrialsPerChunk;
      const std::uint64_t size = detail::chunk_size(n_per_eval, chunk);
      for (std::uint64_t i = 0; i < size; ++i) {
        const auto out = detail::play_trial(draws[begin + i], params, bid);
        e.utility.add(out.utility);
        e.executed.add(out.executed ? 1.0 : 0.0);
      }
      partial[chunk] = e;
    }
    return detail::pairwise_reduce(partial.data(), 0, partial.size(),
                                   [](Eval& a, const Eval& b) {
                                     a.utility.merge(b.utility);
                                     a.executed.merge(b.executed);
                                   });
  };

  const auto finish = [&](double bid, const Eval& e) {
    Calibration cal;
    cal.bid = bid;
    cal.mean_utility = e.utility.mean;
    cal.se_utility = e.utility.std_error();
    cal.exec_rate = e.executed.mean;
    const double slope = params.alpha + (1.0 - params.alpha) * cal.exec_rate;
    cal.se_bid = slope > 0.0 ? cal.se_utility / slope : 0.0;
    cal.evaluations = evaluations;
    return cal;
  };

  Eval at_zero = evaluate(0.0);
  if (at_zero.utility.mean <= 0.0) return finish(0.0, at_zero);

  double upper = initial_upper_bid(d, params);
  for (int i = 0; evaluate(upper).utility.mean > 0.0; ++i) {
    if (i == 64) {
      throw NumericFailure(fmt::format("no sign change of empirical utility on [0, {}]", upper));
    }
    upper *= 2.0;
  }

  double left = 0.0;
  double right = upper;
  for (int i = 0; i < 200; ++i) {
    const double mid = left + 0.5 * (right - left);
    if (mid <= left || mid >= right) break;
    const double u = evaluate(mid).utility.mean;
    if (u > 0.0) {
      left = mid;
    } else {
      right = mid;
    }
    if (right - left <= 1e-13 * std::max(1.0, right)) break;
  }
  const double bid = left + 0.5 * (right - left);
  return finish(bid, evaluate(bid));
}

}  // namespace ofa
