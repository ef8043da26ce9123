#include "misdta/gate_models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "misdta/errors.hpp"
#include "misdta/numerics/lambert_w.hpp"

namespace misdta {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be positive and finite");
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be >= 0 and finite");
}

void require_delta(double delta) {
  if (std::isnan(delta)) throw DomainError("delay query: delta is NaN");
}

// Clamped linear interpolation shared by the Lambert-W families.
double linear_family(const ExtremalDelays& e, double a_pos, double a_neg, double bp_pos, double bp_neg,
                     double delta) {
  const double sum = a_pos + a_neg;
  if (delta >= 0.0) {
    if (delta >= bp_pos) return e.d_inf;
    return e.d0 - (a_pos / sum) * delta;
  }
  const double mag = -delta;
  if (mag >= bp_neg) return e.d_minus_inf;
  return e.d0 - (a_neg / sum) * mag;
}

}  // namespace

const char* to_string(Direction d) noexcept { return d == Direction::rising ? "rising" : "falling"; }

void NorGateParams::validate() const {
  require_positive(r_n_a, "r_n_a");
  require_positive(r_n_b, "r_n_b");
  require_positive(r, "r");
  require_positive(alpha1, "alpha1");
  require_positive(alpha2, "alpha2");
  require_positive(c_load, "c_load");
  require_nonnegative(r5, "r5");
  require_nonnegative(delta_min, "delta_min");
}

void CGateParams::validate() const {
  require_positive(r_n, "r_n");
  require_positive(r_p, "r_p");
  require_positive(alpha1, "alpha1");
  require_positive(alpha2, "alpha2");
  require_positive(alpha3, "alpha3");
  require_positive(alpha4, "alpha4");
  require_positive(c_load, "c_load");
  require_nonnegative(r5, "r5");
  require_nonnegative(delta_min, "delta_min");
}

EffectiveCaps effective_caps(const NorGateParams& p) {
  p.validate();
  const double c = p.c_load, ra = p.r_n_a, rb = p.r_n_b, r5 = p.r5;
  return {
      c * (r5 + ra) / ra,
      c * (r5 + rb) / rb,
      c * (r5 * (ra + rb) + ra * rb) / (ra * rb),
      c * (r5 + 2.0 * p.r) / (2.0 * p.r),
  };
}

double extremal_delay(double alpha, double two_r, double c_eff) {
  require_positive(alpha, "alpha");
  require_positive(two_r, "2R");
  require_positive(c_eff, "C");
  // W_{-1}(-exp(-1 - m)) with m = ln2 * (2R)^2 C / alpha, written through its offset form.
  const double m = kLn2 * two_r * two_r * c_eff / alpha;
  if (!std::isfinite(m)) throw ParameterError("extremal delay: Lambert W argument out of range");
  const double d = alpha / two_r * lambert_w_m1_offset(m);
  if (!(d > 0.0) || !std::isfinite(d)) throw ParameterError("extremal delay: degenerate parameters");
  return d;
}

ExtremalDelays nor_extremal_rising(const NorGateParams& p) {
  const EffectiveCaps caps = effective_caps(p);
  const double two_r = 2.0 * p.r;
  return {
      extremal_delay(p.alpha1 + p.alpha2, two_r, caps.c3),
      extremal_delay(p.alpha2, two_r, caps.c3),
      extremal_delay(p.alpha1, two_r, caps.c3),
  };
}

NorBreakpoints nor_breakpoints(const NorGateParams& p) { return NorDelayModel(p).breakpoints(); }

double nor_delay(const NorGateParams& p, const DelayQuery& q) { return NorDelayModel(p).delay(q); }

NorDelayModel::NorDelayModel(const NorGateParams& p)
    : p_(p), caps_(effective_caps(p)), ext_(nor_extremal_rising(p)) {
  const double a12 = p.alpha1 + p.alpha2;
  bp_ = {
      kLn2 * caps_.c1 * p.r_n_a,
      kLn2 * caps_.c1_prime * p.r_n_b,
      a12 * (ext_.d0 - ext_.d_inf) / p.alpha1,
      a12 * (ext_.d0 - ext_.d_minus_inf) / p.alpha2,
  };
  ln2_c2_par_ = kLn2 * caps_.c2 * p.r_n_a * p.r_n_b / (p.r_n_a + p.r_n_b);
}

double NorDelayModel::delay(Direction output_direction, double delta) const {
  require_delta(delta);
  if (output_direction == Direction::rising)
    return linear_family(ext_, p_.alpha1, p_.alpha2, bp_.rise_pos, bp_.rise_neg, delta) + p_.delta_min;

  const double ra = p_.r_n_a, rb = p_.r_n_b;
  if (delta >= 0.0) {
    if (delta >= bp_.fall_pos) return bp_.fall_pos + p_.delta_min;
    return ln2_c2_par_ - (caps_.c2 / caps_.c1) * delta * rb / (ra + rb) + delta + p_.delta_min;
  }
  const double mag = -delta;
  if (mag >= bp_.fall_neg) return bp_.fall_neg + p_.delta_min;
  return ln2_c2_par_ - (caps_.c2 / caps_.c1_prime) * mag * ra / (ra + rb) + mag + p_.delta_min;
}

ExtremalDelays cgate_extremal(const CGateParams& p, Direction input_direction) {
  p.validate();
  const bool up = input_direction == Direction::rising;
  const double two_r = 2.0 * (up ? p.r_n : p.r_p);
  const double c_eff = p.c_load * (p.r5 + two_r) / two_r;
  if (up)
    return {extremal_delay(p.alpha1 + p.alpha2, two_r, c_eff), extremal_delay(p.alpha2, two_r, c_eff),
            extremal_delay(p.alpha1, two_r, c_eff)};
  return {extremal_delay(p.alpha3 + p.alpha4, two_r, c_eff), extremal_delay(p.alpha3, two_r, c_eff),
          extremal_delay(p.alpha4, two_r, c_eff)};
}

CGateBreakpoints cgate_breakpoints(const CGateParams& p, Direction input_direction) {
  return CGateDelayModel(p).breakpoints(input_direction);
}

Direction cgate_input_direction(const CGateParams& p, Direction output_direction) {
  return p.inverted ? opposite(output_direction) : output_direction;
}

double cgate_delay(const CGateParams& p, const DelayQuery& q) { return CGateDelayModel(p).delay(q); }

CGateDelayModel::CGateDelayModel(const CGateParams& p)
    : p_(p), up_(cgate_extremal(p, Direction::rising)), down_(cgate_extremal(p, Direction::falling)) {
  const double a12 = p.alpha1 + p.alpha2, a34 = p.alpha3 + p.alpha4;
  bp_up_ = {a12 * (up_.d0 - up_.d_inf) / p.alpha1, a12 * (up_.d0 - up_.d_minus_inf) / p.alpha2};
  bp_down_ = {a34 * (down_.d0 - down_.d_inf) / p.alpha4, a34 * (down_.d0 - down_.d_minus_inf) / p.alpha3};
}

double CGateDelayModel::delay_for_inputs(Direction input_direction, double delta) const {
  require_delta(delta);
  if (input_direction == Direction::rising)
    return linear_family(up_, p_.alpha1, p_.alpha2, bp_up_.pos, bp_up_.neg, delta) + p_.delta_min;
  return linear_family(down_, p_.alpha4, p_.alpha3, bp_down_.pos, bp_down_.neg, delta) + p_.delta_min;
}

double CGateDelayModel::delay(const DelayQuery& q) const {
  return delay_for_inputs(cgate_input_direction(p_, q.output_direction), q.delta);
}

}  // namespace misdta
