#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "misdta/numerics/tolerance.hpp"

namespace misdta {

struct OdeOptions {
  double min_step = 1e-18;                                    // seconds; smaller steps are an error
  double max_step = std::numeric_limits<double>::infinity();  // seconds
  double initial_step = 0.0;                                  // 0 = automatic
};

/// Dense output of a scalar integration: accepted steps plus the quartic interpolant
/// of the Dormand-Prince pair on each step.
class OdeSolution {
 public:
  struct Step {
    double t0, h;
    double r1, r2, r3, r4, r5;  // interpolation coefficients
  };

  OdeSolution(double t0, double v0);

  double t_begin() const noexcept { return t_begin_; }
  double t_end() const noexcept { return steps_.empty() ? t_begin_ : steps_.back().t0 + steps_.back().h; }
  double final_value() const noexcept { return final_value_; }

  /// Interpolated value at t in [t_begin, t_end].
  double value_at(double t) const;

  /// Mesh points (t_begin and every accepted step end) and their values.
  std::vector<double> times() const;
  std::vector<double> values() const;
  const std::vector<Step>& steps() const noexcept { return steps_; }

  void append(const Step& s, double v_end);

 private:
  double t_begin_;
  double v_begin_;
  double final_value_;
  std::vector<Step> steps_;
};

using OdeRhs = std::function<double(double t, double v)>;

/// Adaptive Dormand-Prince 5(4) integration of dv/dt = rhs(t, v) from t0 to t1 >= t0.
/// Per-step error is held below tol.abs + tol.rel*|v|.
/// @throws StepUnderflowError if the step size would drop below opts.min_step.
/// @throws NumericalError if rhs returns a non-finite value.
OdeSolution integrate_ode(const OdeRhs& rhs, double v0, double t0, double t1, const Tolerance& tol,
                          const OdeOptions& opts = {});

}  // namespace misdta
