#pragma once

// Closed-form MIS delay functions of the interconnect-augmented hybrid NOR and C gate models.
// All quantities are SI: ohms, ohm-seconds, farads, seconds.

namespace misdta {

enum class Direction { rising, falling };

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::rising ? Direction::falling : Direction::rising;
}
const char* to_string(Direction d) noexcept;

/// Two-input NOR gate driving a lumped RC interconnect.
struct NorGateParams {
  double r_n_a = 0;      // nMOS A on-resistance
  double r_n_b = 0;      // nMOS B on-resistance
  double r = 0;          // half the series pMOS on-resistance (2R = R_pA + R_pB)
  double alpha1 = 0;     // pMOS A switch-on slope, ohm*s
  double alpha2 = 0;     // pMOS B switch-on slope, ohm*s
  double c_load = 0;     // load capacitance
  double r5 = 0;         // interconnect resistance
  double delta_min = 0;  // pure delay

  /// @throws ParameterError naming the first violated invariant.
  void validate() const;
  bool operator==(const NorGateParams&) const = default;
};

/// Muller C gate. Rising inputs discharge via the nMOS stack (R_n, alpha1/alpha2),
/// falling inputs charge via the pMOS stack (R_p, alpha3/alpha4).
struct CGateParams {
  double r_n = 0;
  double r_p = 0;
  double alpha1 = 0;
  double alpha2 = 0;
  double alpha3 = 0;
  double alpha4 = 0;
  double c_load = 0;
  double r5 = 0;
  double delta_min = 0;
  bool inverted = false;  // output polarity: false means the output follows the agreed inputs

  void validate() const;
  bool operator==(const CGateParams&) const = default;
};

struct EffectiveCaps {
  double c1;        // only nMOS A conducting
  double c1_prime;  // only nMOS B conducting
  double c2;        // both nMOS conducting
  double c3;        // pMOS stack conducting
};

struct ExtremalDelays {
  double d0;           // delta = 0
  double d_inf;        // delta -> +inf
  double d_minus_inf;  // delta -> -inf
};

/// Delta = t_B - t_A; +-inf allowed, NaN rejected. -0 is treated as +0.
struct DelayQuery {
  Direction output_direction;
  double delta;
};

struct NorBreakpoints {
  double fall_pos;  // falling output, delta >= 0
  double fall_neg;  // falling output, |delta| for delta < 0
  double rise_pos;
  double rise_neg;
};

/// Breakpoints of the C gate families (magnitudes of delta beyond which delays are clamped).
struct CGateBreakpoints {
  double pos;
  double neg;
};

EffectiveCaps effective_caps(const NorGateParams& p);

/// Lambert-W delay of a rising pMOS-stack trajectory with total slope `alpha`,
/// stack resistance `two_r` and stack-to-ground time constant two_r*c_eff.
/// @throws ParameterError if the inputs are not positive and finite.
double extremal_delay(double alpha, double two_r, double c_eff);

/// delta_0, delta_inf, delta_-inf of the rising-output NOR family (without delta_min).
ExtremalDelays nor_extremal_rising(const NorGateParams& p);

NorBreakpoints nor_breakpoints(const NorGateParams& p);

/// Delay including delta_min. Falling outputs are referenced to the first rising input,
/// rising outputs to the second falling input.
double nor_delay(const NorGateParams& p, const DelayQuery& q);

/// Extremal delays of the family selected by the direction of the (agreeing) input pair.
ExtremalDelays cgate_extremal(const CGateParams& p, Direction input_direction);

CGateBreakpoints cgate_breakpoints(const CGateParams& p, Direction input_direction);

/// Input-pair direction producing an output transition in `output_direction`.
Direction cgate_input_direction(const CGateParams& p, Direction output_direction);

/// Delay including delta_min, referenced to the second input transition.
/// q.output_direction is mapped to the input family through the `inverted` flag.
double cgate_delay(const CGateParams& p, const DelayQuery& q);

/// NOR delay evaluator with the Lambert-W extremal delays computed once.
class NorDelayModel {
 public:
  explicit NorDelayModel(const NorGateParams& p);

  double delay(Direction output_direction, double delta) const;
  double delay(const DelayQuery& q) const { return delay(q.output_direction, q.delta); }

  const NorGateParams& params() const noexcept { return p_; }
  const EffectiveCaps& caps() const noexcept { return caps_; }
  const ExtremalDelays& extremal() const noexcept { return ext_; }
  const NorBreakpoints& breakpoints() const noexcept { return bp_; }

 private:
  NorGateParams p_;
  EffectiveCaps caps_;
  ExtremalDelays ext_;
  NorBreakpoints bp_;
  double ln2_c2_par_;  // ln2*C2*R_nA*R_nB/(R_nA+R_nB)
};

/// C gate evaluator with both extremal families cached.
class CGateDelayModel {
 public:
  explicit CGateDelayModel(const CGateParams& p);

  /// Delay for an agreeing input pair moving in `input_direction`.
  double delay_for_inputs(Direction input_direction, double delta) const;
  double delay(const DelayQuery& q) const;

  const CGateParams& params() const noexcept { return p_; }
  const ExtremalDelays& extremal(Direction input_direction) const noexcept {
    return input_direction == Direction::rising ? up_ : down_;
  }
  const CGateBreakpoints& breakpoints(Direction input_direction) const noexcept {
    return input_direction == Direction::rising ? bp_up_ : bp_down_;
  }

 private:
  CGateParams p_;
  ExtremalDelays up_, down_;
  CGateBreakpoints bp_up_, bp_down_;
};

}  // namespace misdta
