#pragma once

namespace ofa {

/// log B(a, b) via lgamma.
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated with a modified Lentz continued fraction. For
/// x > (a + 1) / (a + b + 2) the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) is
/// used so the fraction always converges quickly. Absolute accuracy is
/// around 1e-14 for moderate shape parameters.
///
/// Throws DomainError unless a > 0, b > 0 and 0 <= x <= 1.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace ofa
