#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "misdta/errors.hpp"
#include "misdta/numerics/tolerance.hpp"

namespace misdta {

enum class Edge { rising, falling };

/// Brent's method (inverse quadratic / secant steps safeguarded by bisection).
///
/// Returns r inside [lo, hi] with |f(r)| <= tol.abs, or once the bracket has shrunk
/// below tol.rel*|r| (plus a few ulps).
/// @throws NoSignChangeError if f(lo) and f(hi) have the same strict sign.
/// @throws NonConvergenceError after tol.max_iter evaluations.
template <typename F>
double find_root_bracketed(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (!(lo <= hi)) std::swap(lo, hi);
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("find_root_bracketed: bracket must be finite");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) throw NumericalError("find_root_bracketed: NaN at bracket end");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NoSignChangeError("find_root_bracketed: no sign change over [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol.rel * std::fabs(b);
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol.abs) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    b = std::clamp(b, lo, hi);
    fb = f(b);
    if (std::isnan(fb)) throw NumericalError("find_root_bracketed: NaN residual");
  }
  throw NonConvergenceError("find_root_bracketed: no convergence after " + std::to_string(tol.max_iter) +
                            " iterations");
}

/// Plain bisection for the time at which `traj` crosses `level`.
///
/// For Edge::rising the trajectory must be below the level at t_lo and at/above it at t_hi
/// (mirrored for falling). Bisection stops when the bracket is <= tol.abs wide or no longer
/// splittable in floating point; the bracket midpoint is returned.
/// @throws NoCrossingError if the bracket does not straddle the level.
template <typename F>
double bisect_threshold_crossing(F&& traj, double level, double t_lo, double t_hi, Edge dir,
                                 const Tolerance& tol = {}) {
  tol.validate();
  if (!(t_lo <= t_hi)) throw DomainError("bisect_threshold_crossing: t_lo > t_hi");
  // before(t): the trajectory has not crossed yet at t
  auto before = [&](double t) {
    const double v = traj(t);
    if (std::isnan(v)) throw NumericalError("bisect_threshold_crossing: NaN trajectory value");
    return dir == Edge::rising ? v < level : v > level;
  };
  if (!before(t_lo) || before(t_hi)) throw NoCrossingError("bisect_threshold_crossing: bracket does not straddle level");
  double lo = t_lo, hi = t_hi;
  for (int iter = 0; hi - lo > tol.abs; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (iter >= tol.max_iter) throw NonConvergenceError("bisect_threshold_crossing: iteration limit");
    (before(mid) ? lo : hi) = mid;
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace misdta
