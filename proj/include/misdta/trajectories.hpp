#pragma once

#include <vector>

#include "misdta/gate_models.hpp"
#include "misdta/numerics/ode.hpp"
#include "misdta/numerics/root_finding.hpp"
#include "misdta/numerics/tolerance.hpp"

namespace misdta {

/// Supply voltage used when none is given; delays do not depend on it.
inline constexpr double kDefaultVdd = 0.8;

/// A series stack whose two transistors switch on `delta` apart:
/// R(t) = alpha_first/(t+delta) + alpha_second/t + two_r, t measured from the second switch,
/// loading an effective capacitance c_eff.
struct DoubleSwitchShape {
  double alpha_first;
  double alpha_second;
  double two_r;
  double c_eff;
};

/// Derived symbols of one double-switch trajectory.
struct TrajectoryContext {
  double a;        // (alpha_first + alpha_second) / 2R
  double d;        // a + delta
  double chi;      // d^2 - 4 c'
  double c_prime;  // alpha_second * delta / 2R
  double a_exp;    // A, weight of the log(1 + t/r2) term
  double c_eff;
  double v_dd;
  double v_th;     // v_dd / 2
  double two_r;
  double delta;
  double r1;       // (d + sqrt(chi)) / 2
  double r2;       // (d - sqrt(chi)) / 2, computed as c'/r1
  enum class Form { general, zero_delta, infinite_delta } form;
};

/// @throws DomainError for negative or NaN delta.
TrajectoryContext make_trajectory_context(const DoubleSwitchShape& s, double delta, double v_dd = kDefaultVdd);

/// log of exp(-G(t)), the fraction of the initial distance to the rail still remaining at t >= 0.
double log_remaining(const TrajectoryContext& ctx, double t);

/// exp(-G(t)) - 1/2; its root in t is the threshold crossing time after the second switch.
double implicit_I(const TrajectoryContext& ctx, double t);

/// Shape of the rising-output NOR trajectory; the '+' family (delta >= 0) has input A switching first.
DoubleSwitchShape nor_rising_shape(const NorGateParams& p, bool plus_family);

/// Shape of a C-gate trajectory for an agreeing input pair.
DoubleSwitchShape cgate_shape(const CGateParams& p, Direction input_direction, bool plus_family);

/// implicit_I for the NOR gate with signed delta (negative delta mirrors via the alpha swap).
double implicit_I(double t, double delta, const NorGateParams& p);

/// Input-state transitions of the NOR gate (A, B) and the C gate.
enum class ModeKind {
  nor_up_minus,        // (0,0) -> (1,0)
  nor_upup_plus,       // (1,0) -> (1,1)
  nor_up_plus,         // (0,0) -> (0,1)
  nor_upup_minus,      // (0,1) -> (1,1)
  nor_down_minus,      // (1,1) -> (0,1)
  nor_downdown_plus,   // (0,1) -> (0,0)
  nor_down_plus,       // (1,1) -> (1,0)
  nor_downdown_minus,  // (1,0) -> (0,0)
  c_up_a,              // (0,0) -> (1,0), output held
  c_upup_plus,         // (1,0) -> (1,1)
  c_up_b,              // (0,0) -> (0,1), output held
  c_upup_minus,        // (0,1) -> (1,1)
  c_down_a,            // (1,1) -> (0,1), output held
  c_downdown_plus,     // (0,1) -> (0,0)
  c_down_b,            // (1,1) -> (1,0), output held
  c_downdown_minus,    // (1,0) -> (0,0)
};

bool is_nor_mode(ModeKind k) noexcept;

struct ModeSwitch {
  ModeKind kind;
  double delta = 0.0;      // |t_B - t_A| for the double-switch modes
  double initial_v = 0.0;  // output voltage at the switch
};

/// Closed-form output voltage t >= 0 after the mode switch (constant-F interconnect approximation).
double eval_trajectory(const ModeSwitch& ms, const NorGateParams& p, double t, double v_dd = kDefaultVdd);
double eval_trajectory(const ModeSwitch& ms, const CGateParams& p, double t, double v_dd = kDefaultVdd);

/// Delay oracle from the closed-form trajectories: the falling NOR output chains the two
/// exponential modes and bisects the chain, every other family bisects I(t, delta) = 0.
/// Includes delta_min and uses the same reference points as nor_delay / cgate_delay.
double delay_by_inversion(const NorGateParams& p, const DelayQuery& q);
double delay_by_inversion(const CGateParams& p, const DelayQuery& q);

/// One input edge applied to the gate: input 0 is A, 1 is B.
struct InputTransition {
  double time;
  int input;
  bool value;
};

/// Input history for a full-ODE run. Transitions must be time ordered and lie in (t_begin, t_end].
/// Inputs low at t_begin are treated as having fallen at -infinity (fully conducting pMOS).
struct OdeScenario {
  bool a0 = false;
  bool b0 = false;
  double v0 = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<InputTransition> transitions;
};

/// Continuous trajectory assembled from one ODE solution per input state.
class PiecewiseTrajectory {
 public:
  void add(OdeSolution s) { segments_.push_back(std::move(s)); }
  double t_begin() const;
  double t_end() const;
  double value_at(double t) const;
  const std::vector<OdeSolution>& segments() const noexcept { return segments_; }

  /// First time at or after t_from the trajectory crosses `level` in direction `dir`.
  /// @throws NoCrossingError if it never does within the integrated span.
  double first_crossing(double level, Edge dir, double t_from) const;

 private:
  std::vector<OdeSolution> segments_;
};

struct FullOdeOptions {
  bool exact_f = true;  // time-varying interconnect factor; false uses the per-state constant
  double v_dd = kDefaultVdd;
  Tolerance tol{1e-11, 1e-14, 200};  // abs is in volts
};

/// Integrates the interconnect ODE dV/dt = f(t) (V_DD*G_up - V*(G_up + G_dn)) / C through
/// every input state of the scenario.
PiecewiseTrajectory integrate_full_ode(const NorGateParams& p, const OdeScenario& sc, const FullOdeOptions& opt = {});
PiecewiseTrajectory integrate_full_ode(const CGateParams& p, const OdeScenario& sc, const FullOdeOptions& opt = {});

/// Delay oracle from the full ODE, with the same reference points as the closed forms.
double delay_by_ode(const NorGateParams& p, const DelayQuery& q, const FullOdeOptions& opt = {});
double delay_by_ode(const CGateParams& p, const DelayQuery& q, const FullOdeOptions& opt = {});

}  // namespace misdta
