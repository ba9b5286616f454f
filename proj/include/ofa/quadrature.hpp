#pragma once

#include <functional>

namespace ofa {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 60;
};

/// Adaptive Simpson integration of f over [a, b].
///
/// Uses the Richardson-corrected Simpson estimate on each accepted panel.
/// Returns 0 when a >= b.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, QuadratureOptions opts = {});

}  // namespace ofa
