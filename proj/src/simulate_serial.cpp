#include <cmath>

#include <fmt/format.h>

#include "ofa/errors.hpp"
#include "ofa/simulate.hpp"
#include "trial_kernel.hpp"

namespace ofa {
namespace {

struct Sums {
  long double n = 0, sum = 0, sum_sq = 0;

  void add(double x) {
    n += 1;
    sum += x;
    sum_sq += static_cast<long double>(x) * x;
  }
  double mean() const { return n > 0 ? static_cast<double>(sum / n) : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    const long double m = sum / n;
    const long double var = (sum_sq - n * m * m) / (n - 1);
    return var > 0 ? static_cast<double>(std::sqrt(var / n)) : 0.0;
  }
};

}  // namespace

SimResult simulate_auction_serial(const Distribution& d, const AuctionParams& params,
                                  const SimConfig& cfg) {
  validate(d, params);
  if (cfg.n_trials == 0) throw InvalidParams("need at least one trial");
  if (!(cfg.bid >= 0.0) || !std::isfinite(cfg.bid)) {
    throw InvalidParams(fmt::format("bid must be finite and nonnegative (got {})", cfg.bid));
  }

  Sums utility, executed, revenue, spread;
  const std::uint64_t n_chunks = detail::chunk_count(cfg.n_trials);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    Rng rng = make_stream(cfg.seed, c);
    const std::uint64_t size = detail::chunk_size(cfg.n_trials, c);
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto draw = detail::draw_trial(d, rng);
      const auto out = detail::play_trial(draw, params, cfg.bid);
      utility.add(out.utility);
      executed.add(out.executed ? 1.0 : 0.0);
      revenue.add(out.revenue);
      if (out.executed) spread.add(draw.price - params.strike);
    }
  }

  SimResult r;
  r.n_trials = cfg.n_trials;
  r.mean_utility = utility.mean();
  r.se_utility = utility.std_error();
  r.exec_rate = executed.mean();
  r.se_exec = executed.std_error();
  r.mean_revenue = revenue.mean();
  r.se_revenue = revenue.std_error();
  r.n_exec = static_cast<std::uint64_t>(spread.n);
  if (r.n_exec > 0) {
    r.mean_spread_given_exec = spread.mean();
    r.se_spread = spread.std_error();
  }
  return r;
}

}  // namespace ofa
