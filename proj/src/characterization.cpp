#include "misdta/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "misdta/errors.hpp"
#include "misdta/numerics/lambert_w.hpp"
#include "misdta/numerics/root_finding.hpp"

namespace misdta {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void throw_if_invalid(const MeasuredDelays& m, GateKind kind) {
  const auto v = validate_measured(m, kind);
  if (v.empty()) return;
  std::string msg = "invalid measured delays:";
  for (const auto& x : v) msg += " [" + x.invariant + "] " + x.detail + ";";
  throw ValidationError(msg);
}

// Residual B(t0) - B(t_inf) - B(t_-inf) in the total stack resistance z.
struct FamilyResidual {
  double t0, t_inf, t_minus_inf, c;
  double operator()(double z) const {
    return char_fn_B(t0, z, c) - char_fn_B(t_inf, z, c) - char_fn_B(t_minus_inf, z, c);
  }
  double z_max() const { return std::min({t0, t_inf, t_minus_inf}) / (c * kLn2); }
};

// Root of the residual in z over (z_lo, z_max). The residual is scanned on a log grid first so
// that a non-monotone residual still yields its smallest root.
double solve_stack(const FamilyResidual& f, double z_lo, const char* what) {
  const double z_hi = f.z_max() * (1.0 - 1e-12);
  if (!(z_hi > z_lo))
    throw NumericalError(std::string(what) + ": empty search interval for the stack resistance");
  const Tolerance tol{1e-15, 0.0, 400};
  constexpr int kGrid = 96;
  double prev_z = z_lo, prev_f = f(z_lo);
  if (prev_f == 0.0) return z_lo;
  for (int i = 1; i <= kGrid; ++i) {
    const double z = i == kGrid ? z_hi : z_lo * std::pow(z_hi / z_lo, static_cast<double>(i) / kGrid);
    const double fz = f(z);
    if (fz == 0.0) return z;
    if ((fz > 0.0) != (prev_f > 0.0)) return find_root_bracketed(f, prev_z, z, tol);
    prev_z = z;
    prev_f = fz;
  }
  throw NoSignChangeError(std::string(what) + ": no resistance reproduces the measured rising-family delays");
}

}  // namespace

std::vector<Violation> validate_measured(const MeasuredDelays& m, GateKind kind) {
  std::vector<Violation> out;
  const double vals[] = {m.d_down_minus_inf, m.d_down_zero, m.d_down_inf, m.d_up_minus_inf,
                         m.d_up_zero,        m.d_up_inf,    m.delta_min,  m.c_chosen};
  for (double v : vals)
    if (!std::isfinite(v)) {
      out.push_back({"finite", "all measured values must be finite"});
      return out;
    }
  if (m.delta_min < 0.0) out.push_back({"delta-min-nonnegative", "delta_min=" + fmt(m.delta_min) + " < 0"});
  if (!(m.c_chosen > 0.0)) out.push_back({"c-positive", "c_chosen=" + fmt(m.c_chosen) + " must be > 0"});

  const std::pair<const char*, double> delays[] = {
      {"d_down_minus_inf", m.d_down_minus_inf}, {"d_down_zero", m.d_down_zero}, {"d_down_inf", m.d_down_inf},
      {"d_up_minus_inf", m.d_up_minus_inf},     {"d_up_zero", m.d_up_zero},     {"d_up_inf", m.d_up_inf}};
  for (const auto& [name, v] : delays)
    if (!(v > m.delta_min))
      out.push_back({"delay-exceeds-delta-min",
                     std::string(name) + "=" + fmt(v) + " must exceed delta_min=" + fmt(m.delta_min)});

  if (!(m.d_up_zero > std::max(m.d_up_inf, m.d_up_minus_inf)))
    out.push_back({"up-family-peak", "d_up_zero=" + fmt(m.d_up_zero) + " must exceed d_up_inf=" + fmt(m.d_up_inf) +
                                         " and d_up_minus_inf=" + fmt(m.d_up_minus_inf)});

  if (kind == GateKind::cgate) {
    if (!(m.d_down_zero > std::max(m.d_down_inf, m.d_down_minus_inf)))
      out.push_back({"down-family-peak", "d_down_zero=" + fmt(m.d_down_zero) + " must exceed d_down_inf=" +
                                             fmt(m.d_down_inf) + " and d_down_minus_inf=" + fmt(m.d_down_minus_inf)});
    return out;
  }

  const double p = (m.d_down_inf - m.d_down_zero) * (m.d_down_minus_inf - m.d_down_zero);
  if (p < 0.0) {
    out.push_back({"epsilon-real", "(d_down_inf - d_down_zero)*(d_down_minus_inf - d_down_zero)=" + fmt(p) + " < 0"});
    return out;
  }
  if (!(m.d_down_inf > m.d_down_zero && m.d_down_minus_inf > m.d_down_zero))
    out.push_back({"down-family-valley", "d_down_zero=" + fmt(m.d_down_zero) + " must be below d_down_inf=" +
                                             fmt(m.d_down_inf) + " and d_down_minus_inf=" + fmt(m.d_down_minus_inf)});
  const double eps = std::sqrt(p);
  if (m.d_down_zero - m.delta_min < eps)
    out.push_back({"r5-nonnegative", "d_down_zero - delta_min=" + fmt(m.d_down_zero - m.delta_min) +
                                         " must be >= epsilon=" + fmt(eps)});
  return out;
}

double char_fn_B(double t, double z, double c) {
  if (!(t > 0.0) || !(z >= 0.0) || !(c > 0.0) || !std::isfinite(t + z + c))
    throw DomainError("char_fn_B: need t > 0, z >= 0, C > 0");
  const double u = c * z * kLn2 / t;
  if (!(u < 1.0)) throw DomainError("char_fn_B: delay " + fmt(t) + " s not above the RC bound " + fmt(c * z * kLn2) + " s");
  if (u == 0.0) throw DomainError("char_fn_B: zero stack resistance");
  const double v = 1.0 - u;
  const double sigma = lambert_w_m1_offset(-u - std::log1p(-u));
  return t * v / (sigma + u);
}

double char_fn_A(double t, double r, double r5, double c) {
  if (!(r > 0.0) || !(r5 >= 0.0)) throw DomainError("char_fn_A: need R > 0 and R5 >= 0");
  return 2.0 * r * char_fn_B(t, r5 + 2.0 * r, c);
}

double nor_r_residual(const MeasuredDelays& m, double r5, double r) {
  const FamilyResidual f{m.d_up_zero - m.delta_min, m.d_up_inf - m.delta_min, m.d_up_minus_inf - m.delta_min,
                         m.c_chosen};
  return f(r5 + 2.0 * r);
}

NorGateParams characterize_nor(const MeasuredDelays& m) {
  throw_if_invalid(m, GateKind::nor2);
  const double c = m.c_chosen;
  const double k = kLn2 * c;
  const double eps = std::sqrt((m.d_down_inf - m.d_down_zero) * (m.d_down_minus_inf - m.d_down_zero));

  NorGateParams p;
  p.c_load = c;
  p.delta_min = m.delta_min;
  p.r5 = std::max(0.0, (m.d_down_zero - m.delta_min - eps) / k);
  p.r_n_a = (m.d_down_inf - m.d_down_zero + eps) / k;
  p.r_n_b = (m.d_down_minus_inf - m.d_down_zero + eps) / k;

  const FamilyResidual f{m.d_up_zero - m.delta_min, m.d_up_inf - m.delta_min, m.d_up_minus_inf - m.delta_min, c};
  // R ranges over [1e-2, 1e9) ohm, capped where every B stays defined.
  const double z_lo = p.r5 + 2.0 * 1e-2;
  const double z = solve_stack(FamilyResidual{f}, z_lo, "characterize_nor");
  if (!(z > p.r5)) throw NumericalError("characterize_nor: no positive pMOS resistance");
  p.r = 0.5 * (z - p.r5);
  if (p.r >= 1e9) throw NumericalError("characterize_nor: pMOS resistance out of range");
  p.alpha1 = 2.0 * p.r * char_fn_B(f.t_minus_inf, z, c);
  p.alpha2 = 2.0 * p.r * char_fn_B(f.t_inf, z, c);
  p.validate();
  return p;
}

CGateStackResistances cgate_stack_resistances(const MeasuredDelays& m) {
  throw_if_invalid(m, GateKind::cgate);
  const double c = m.c_chosen;
  const FamilyResidual up{m.d_up_zero - m.delta_min, m.d_up_inf - m.delta_min, m.d_up_minus_inf - m.delta_min, c};
  const FamilyResidual down{m.d_down_zero - m.delta_min, m.d_down_inf - m.delta_min,
                            m.d_down_minus_inf - m.delta_min, c};
  auto lower = [](const FamilyResidual& f) { return std::min(1e-2, 1e-12 * f.z_max()); };
  return {solve_stack(up, lower(up), "characterize_cgate (rising family)"),
          solve_stack(down, lower(down), "characterize_cgate (falling family)")};
}

CGateParams characterize_cgate(const MeasuredDelays& m, std::optional<double> r5_choice) {
  const auto [x, y] = cgate_stack_resistances(m);
  const double r5 = r5_choice.value_or(0.0);
  if (!(r5 >= 0.0) || !(r5 < std::min(x, y)))
    throw ValidationError("characterize_cgate: r5=" + fmt(r5) + " outside [0, " + fmt(std::min(x, y)) + ")");
  const double c = m.c_chosen;
  CGateParams p;
  p.c_load = c;
  p.delta_min = m.delta_min;
  p.r5 = r5;
  p.r_n = 0.5 * (x - r5);
  p.r_p = 0.5 * (y - r5);
  p.alpha1 = 2.0 * p.r_n * char_fn_B(m.d_up_minus_inf - m.delta_min, x, c);
  p.alpha2 = 2.0 * p.r_n * char_fn_B(m.d_up_inf - m.delta_min, x, c);
  p.alpha3 = 2.0 * p.r_p * char_fn_B(m.d_down_inf - m.delta_min, y, c);
  p.alpha4 = 2.0 * p.r_p * char_fn_B(m.d_down_minus_inf - m.delta_min, y, c);
  p.validate();
  return p;
}

MeasuredDelays forward_delays(const NorGateParams& p) {
  const NorDelayModel g(p);
  MeasuredDelays m;
  m.d_down_minus_inf = g.delay(Direction::falling, -kInf);
  m.d_down_zero = g.delay(Direction::falling, 0.0);
  m.d_down_inf = g.delay(Direction::falling, kInf);
  m.d_up_minus_inf = g.delay(Direction::rising, -kInf);
  m.d_up_zero = g.delay(Direction::rising, 0.0);
  m.d_up_inf = g.delay(Direction::rising, kInf);
  m.delta_min = p.delta_min;
  m.c_chosen = p.c_load;
  return m;
}

MeasuredDelays forward_delays(const CGateParams& p) {
  const CGateDelayModel g(p);
  MeasuredDelays m;
  m.d_down_minus_inf = g.delay_for_inputs(Direction::falling, -kInf);
  m.d_down_zero = g.delay_for_inputs(Direction::falling, 0.0);
  m.d_down_inf = g.delay_for_inputs(Direction::falling, kInf);
  m.d_up_minus_inf = g.delay_for_inputs(Direction::rising, -kInf);
  m.d_up_zero = g.delay_for_inputs(Direction::rising, 0.0);
  m.d_up_inf = g.delay_for_inputs(Direction::rising, kInf);
  m.delta_min = p.delta_min;
  m.c_chosen = p.c_load;
  return m;
}

}  // namespace misdta
