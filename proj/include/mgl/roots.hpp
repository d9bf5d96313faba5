#pragma once

#include <cmath>

namespace mgl {

/// Bisection on a sign-changing bracket down to `width`, then at most
/// `newton_steps` Newton steps that are kept only while they stay inside the
/// bracket and reduce |f|.
template <class F, class DF>
double bisect_newton(F&& f, DF&& df, double lo, double hi, double width, int newton_steps = 5) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double x = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double fx = std::abs(flo) < std::abs(fhi) ? flo : fhi;
  for (int i = 0; i < newton_steps; ++i) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= lo && next <= hi)) break;
    const double fn = f(next);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

}  // namespace mgl
