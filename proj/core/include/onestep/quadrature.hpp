#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>

#include "onestep/error.hpp"

namespace onestep::quad {

inline constexpr int kMaxSimpsonDepth = 40;

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double refined = left + right;
  const double delta = refined - whole;
  // The second test stops refinement once the estimate is at roundoff level.
  if (std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= 64.0 * std::numeric_limits<double>::epsilon() *
                             std::abs(refined)) {
    return refined + delta / 15.0;
  }
  if (depth <= 0) {
    throw Error(ErrorKind::Numerical,
                "adaptive Simpson did not converge within the maximum depth");
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Integrates over [a, b] with
/// orientation (b < a gives the negated integral). Throws ErrorKind::Numerical
/// if the recursion exceeds max_depth.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = kMaxSimpsonDepth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

/// Trapezoid rule over an arbitrary ascending grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace onestep::quad
