#pragma once

#include <optional>
#include <string>
#include <vector>

#include "misdta/gate_models.hpp"

namespace misdta {

enum class GateKind { nor2, cgate };

/// The six extremal delays of a real gate (each including the pure delay),
/// the separately measured pure delay and the load capacitance chosen for the model.
/// "down"/"up" name the falling/rising output family for the NOR gate and the
/// falling/rising input-pair family for the C gate.
struct MeasuredDelays {
  double d_down_minus_inf = 0;
  double d_down_zero = 0;
  double d_down_inf = 0;
  double d_up_minus_inf = 0;
  double d_up_zero = 0;
  double d_up_inf = 0;
  double delta_min = 0;
  double c_chosen = 0;

  bool operator==(const MeasuredDelays&) const = default;
};

struct Violation {
  std::string invariant;  // stable identifier, e.g. "epsilon-real"
  std::string detail;     // human-readable, with the offending values
};

/// Every violated invariant; empty when the measurements are usable.
std::vector<Violation> validate_measured(const MeasuredDelays& m, GateKind kind);

/// Inverse of the Lambert-W extremal delay: the alpha/2R that makes a stack with
/// total series resistance z (interconnect included) reach the threshold after t.
/// @throws DomainError unless 0 < C*z*ln2 < t.
double char_fn_B(double t, double z, double c);

/// alpha reproducing extremal delay t (pure delay excluded) for pMOS stack 2R behind R5.
double char_fn_A(double t, double r, double r5, double c);

/// Residual of the equation fixing R: B(t0) - B(t_inf) - B(t_-inf) at z = R5 + 2R.
double nor_r_residual(const MeasuredDelays& m, double r5, double r);

/// Characterizes a NOR gate from its measured extremal delays.
/// @throws ValidationError listing the violated invariants; NumericalError if R cannot be solved.
NorGateParams characterize_nor(const MeasuredDelays& m);

/// Total stack resistances x = R5 + 2R_n (rising family) and y = R5 + 2R_p (falling family).
struct CGateStackResistances {
  double x;
  double y;
};
CGateStackResistances cgate_stack_resistances(const MeasuredDelays& m);

/// Characterizes a C gate. r5_choice defaults to 0 and must lie in [0, min(x, y)).
CGateParams characterize_cgate(const MeasuredDelays& m, std::optional<double> r5_choice = std::nullopt);

/// The six extremal delays (including delta_min) a parameter set predicts.
MeasuredDelays forward_delays(const NorGateParams& p);
MeasuredDelays forward_delays(const CGateParams& p);

}  // namespace misdta
