#include "ofa/oracle.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ofa/distribution.hpp"
#include "ofa/equilibrium.hpp"
#include "ofa/errors.hpp"

namespace ofa::oracle {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError(fmt::format("alpha must lie in [0, 1] (got {})", alpha));
  }
}

}  // namespace

double uniform_closed_form_bid(double alpha) {
  check_alpha(alpha);
  const double root = 1.0 + std::sqrt(alpha);
  return 1.0 / (2.0 * root * root);
}

double paper_appendix_bid(double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) return 0.25;
  const double c = (1.0 - alpha) * (1.0 - alpha);
  return (1.0 - std::sqrt(1.0 - c)) / (2.0 * c);
}

UniformMetrics uniform_metrics(double alpha) {
  const double b = uniform_closed_form_bid(alpha);
  const double shift = (1.0 - alpha) * b;
  UniformMetrics m{};
  m.p_exec = 0.5 - shift;
  m.revenue = alpha * b + (1.0 - alpha) * b * m.p_exec;
  if (m.p_exec > 0.0) m.effective_spread = 0.25 + 0.5 * shift;
  return m;
}

OracleReport compare(double alpha, double tol) {
  const UniformDistribution unit(0.0, 1.0);
  const AuctionParams params{.strike = 0.5, .alpha = alpha};
  OracleReport r{};
  r.alpha = alpha;
  r.corrected_bid = uniform_closed_form_bid(alpha);
  r.paper_appendix_bid = paper_appendix_bid(alpha);
  r.numeric_bid = solve_equilibrium(unit, params, tol).b_star;
  r.corrected_minus_numeric = r.corrected_bid - r.numeric_bid;
  r.appendix_minus_numeric = r.paper_appendix_bid - r.numeric_bid;
  return r;
}

}  // namespace ofa::oracle
