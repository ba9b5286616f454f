#pragma once

#include <optional>

namespace ofa::oracle {

// Closed forms for S ~ uniform[0,1] and strike 1/2.

/// Zero-profit bid 1 / (2 (1 + sqrt(alpha))^2): the smaller root of
/// (1-alpha)^2 b^2 - (1+alpha) b + 1/4 = 0. Throws DomainError outside [0,1].
double uniform_closed_form_bid(double alpha);

/// The uncorrected formula (1 - sqrt(1 - (1-alpha)^2)) / (2 (1-alpha)^2),
/// kept to show the discrepancy. Its alpha -> 1 limit is 1/4, not the
/// option value 1/8. Returns the limit at alpha = 1.
double paper_appendix_bid(double alpha);

struct UniformMetrics {
  double p_exec;
  double revenue;
  std::optional<double> effective_spread;
};

/// Execution probability, revenue and spread at the closed-form bid.
UniformMetrics uniform_metrics(double alpha);

struct OracleReport {
  double alpha;
  double corrected_bid;
  double paper_appendix_bid;
  double numeric_bid;
  double corrected_minus_numeric;
  double appendix_minus_numeric;
};

/// Compares both closed forms with the numeric solver.
OracleReport compare(double alpha, double tol);

}  // namespace ofa::oracle
