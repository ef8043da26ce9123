#include "misdta/numerics/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "misdta/errors.hpp"

namespace misdta {

OdeSolution::OdeSolution(double t0, double v0) : t_begin_(t0), v_begin_(v0), final_value_(v0) {}

void OdeSolution::append(const Step& s, double v_end) {
  steps_.push_back(s);
  final_value_ = v_end;
}

double OdeSolution::value_at(double t) const {
  if (steps_.empty() || t <= t_begin_) {
    if (t < t_begin_ || t > t_end()) throw DomainError("OdeSolution::value_at: t outside integrated span");
    return v_begin_;
  }
  if (t > t_end()) throw DomainError("OdeSolution::value_at: t outside integrated span");
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double x, const Step& s) { return x < s.t0 + s.h; });
  if (it == steps_.end()) return final_value_;
  const Step& s = *it;
  const double th = (t - s.t0) / s.h;
  const double th1 = 1.0 - th;
  return s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
}

std::vector<double> OdeSolution::times() const {
  std::vector<double> out{t_begin_};
  for (const auto& s : steps_) out.push_back(s.t0 + s.h);
  return out;
}

std::vector<double> OdeSolution::values() const {
  std::vector<double> out{v_begin_};
  for (std::size_t i = 1; i < steps_.size(); ++i) out.push_back(steps_[i].r1);
  if (!steps_.empty()) out.push_back(final_value_);
  return out;
}

namespace {

// Dormand & Prince (1980) tableau, with Hairer's dense-output weights.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double checked(double v) {
  if (!std::isfinite(v)) throw NumericalError("integrate_ode: non-finite right-hand side");
  return v;
}

}  // namespace

OdeSolution integrate_ode(const OdeRhs& rhs, double v0, double t0, double t1, const Tolerance& tol,
                          const OdeOptions& opts) {
  tol.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw DomainError("integrate_ode: need finite t0 <= t1");
  if (!std::isfinite(v0)) throw DomainError("integrate_ode: non-finite initial value");
  OdeSolution sol(t0, v0);
  const double span = t1 - t0;
  if (span == 0.0) return sol;

  auto f = [&](double t, double v) { return checked(rhs(t, v)); };
  auto scale = [&](double v) { return tol.abs + tol.rel * std::fabs(v); };

  double t = t0, v = v0;
  double k1 = f(t, v);

  double h = opts.initial_step;
  if (!(h > 0.0)) {
    // Hairer's starting-step heuristic, simplified for the scalar case.
    const double sc = scale(v);
    const double dn0 = std::fabs(v) / sc, dn1 = std::fabs(k1) / sc;
    h = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-3 * span : 0.01 * dn0 / dn1;
    h = std::min(h, span);
    const double v1 = v + h * k1;
    const double dn2 = std::fabs(f(t + h, v1) - k1) / sc / h;
    const double dmax = std::max(dn1, dn2);
    // flat start: let the error control find the scale
    const double h1 = dmax <= 1e-15 ? 1e-3 * span : std::pow(0.01 / dmax, 0.2);
    h = std::min({100.0 * h, h1, span});
  }
  h = std::min(h, opts.max_step);

  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
  bool last_rejected = false;
  while (t < t1) {
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h < opts.min_step && !last)
      throw StepUnderflowError("integrate_ode: step size underflow at t=" + std::to_string(t));

    const double k2 = f(t + c2 * h, v + h * a21 * k1);
    const double k3 = f(t + c3 * h, v + h * (a31 * k1 + a32 * k2));
    const double k4 = f(t + c4 * h, v + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(t + c5 * h, v + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(t + h, v + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double vn = v + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double k7 = f(t + h, vn);

    const double err_est = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = std::fabs(err_est) / scale(std::max(std::fabs(v), std::fabs(vn)));

    if (err <= 1.0) {
      const double ydiff = vn - v;
      const double bspl = h * k1 - ydiff;
      OdeSolution::Step s{t, h, v, ydiff, bspl, ydiff - h * k7 - bspl,
                          h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
      sol.append(s, vn);
      t = last ? t1 : t + h;
      v = vn;
      k1 = k7;
      double fac = err == 0.0 ? fac_max : std::clamp(safety * std::pow(err, -0.2), fac_min, fac_max);
      if (last_rejected) fac = std::min(fac, 1.0);
      h = std::min(h * fac, opts.max_step);
      last_rejected = false;
    } else {
      h *= std::max(fac_min, safety * std::pow(err, -0.2));
      last_rejected = true;
      if (h < opts.min_step)
        throw StepUnderflowError("integrate_ode: step size underflow at t=" + std::to_string(t));
    }
  }
  return sol;
}

}  // namespace misdta
