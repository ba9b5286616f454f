#include "ofa/quadrature.hpp"

#include <cmath>
#include <limits>

namespace ofa {
namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double diff = left + right - p.whole;
  // Panels narrower than a few ulps cannot be split further.
  const bool too_narrow =
      (p.b - p.a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(p.m));
  if (depth <= 0 || too_narrow || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        QuadratureOptions opts) {
  if (!(a < b)) return 0.0;
  // A few initial panels keep a single lucky five-point estimate from
  // terminating the recursion early.
  constexpr int kInitialPanels = 4;
  const double h = (b - a) / kInitialPanels;
  double total = 0.0;
  double left = a;
  double f_left = f(a);
  for (int i = 1; i <= kInitialPanels; ++i) {
    const double right = i == kInitialPanels ? b : a + i * h;
    const double mid = 0.5 * (left + right);
    const double f_mid = f(mid);
    const double f_right = f(right);
    const Panel panel{left, f_left, mid, f_mid, right, f_right,
                      simpson(left, f_left, f_mid, right, f_right)};
    total += refine(f, panel, opts.abs_tol / kInitialPanels, opts.max_depth);
    left = right;
    f_left = f_right;
  }
  return total;
}

}  // namespace ofa
