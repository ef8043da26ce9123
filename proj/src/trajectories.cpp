#include "misdta/trajectories.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "misdta/errors.hpp"
#include "misdta/numerics/root_finding.hpp"

namespace misdta {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Bisect until the bracket can no longer be split.
const Tolerance kBisectTol{1e-15, 0.0, 4000};

void check_shape(const DoubleSwitchShape& s) {
  if (!(s.alpha_first > 0.0) || !(s.alpha_second > 0.0) || !(s.two_r > 0.0) || !(s.c_eff > 0.0) ||
      !std::isfinite(s.alpha_first + s.alpha_second + s.two_r + s.c_eff))
    throw ParameterError("trajectory shape: alphas, 2R and C must be positive and finite");
}

bool plus_family(double delta) { return !(delta < 0.0); }

// Time at which exp(-G(t)) reaches 1/2.
double half_remaining_time(const TrajectoryContext& ctx) {
  auto lr = [&](double t) { return log_remaining(ctx, t); };
  double hi = ctx.two_r * ctx.c_eff * kLn2 + 2.0 * ctx.a;
  for (int i = 0; lr(hi) > -kLn2; ++i) {
    if (i > 200) throw NoCrossingError("trajectory never reaches the threshold");
    hi *= 2.0;
  }
  return bisect_threshold_crossing(lr, -kLn2, 0.0, hi, Edge::falling, kBisectTol);
}

// Crossing of a monotone function of t, expanding the upper bracket end as needed.
template <typename F>
double crossing_with_expansion(F&& f, double level, double hi, Edge dir) {
  auto before = [&](double t) { return dir == Edge::rising ? f(t) < level : f(t) > level; };
  for (int i = 0; before(hi); ++i) {
    if (i > 200) throw NoCrossingError("trajectory never reaches the threshold");
    hi *= 2.0;
  }
  return bisect_threshold_crossing(f, level, 0.0, hi, dir, kBisectTol);
}

}  // namespace

TrajectoryContext make_trajectory_context(const DoubleSwitchShape& s, double delta, double v_dd) {
  check_shape(s);
  if (std::isnan(delta) || delta < 0.0) throw DomainError("trajectory context: delta must be >= 0");
  if (!(v_dd > 0.0)) throw ParameterError("trajectory context: v_dd must be > 0");
  TrajectoryContext c{};
  const double a1 = s.alpha_first / s.two_r, a2 = s.alpha_second / s.two_r;
  c.a = a1 + a2;
  c.c_eff = s.c_eff;
  c.v_dd = v_dd;
  c.v_th = 0.5 * v_dd;
  c.two_r = s.two_r;
  c.delta = delta;
  if (std::isinf(delta)) {
    // first transistor fully on: only the second one's slope remains
    c.form = TrajectoryContext::Form::infinite_delta;
    c.d = kInf;
    c.chi = kInf;
    c.c_prime = kInf;
    c.r1 = kInf;
    c.r2 = a2;
    c.a_exp = a2;
    return c;
  }
  c.d = c.a + delta;
  c.c_prime = a2 * delta;
  if (delta < 1e-6 * c.a) {
    c.form = TrajectoryContext::Form::zero_delta;
    c.chi = c.a * c.a;
    c.r1 = c.a;
    c.r2 = 0.0;
    c.a_exp = 0.0;
    return c;
  }
  c.form = TrajectoryContext::Form::general;
  // chi = (delta + a1 - a2)^2 + 4 a1 a2: a sum of non-negative terms, no cancellation
  const double u = delta + a1 - a2;
  c.chi = u * u + 4.0 * a1 * a2;
  const double sq = std::sqrt(c.chi);
  c.r1 = 0.5 * (c.d + sq);
  c.r2 = c.c_prime / c.r1;
  // sqrt(chi) - a = (delta^2 + 2 delta (a1 - a2)) / (sqrt(chi) + a)
  const double delta_plus_sq_minus_a = delta * (1.0 + (delta + 2.0 * (a1 - a2)) / (sq + c.a));
  c.a_exp = c.c_prime * delta_plus_sq_minus_a / (2.0 * c.r1 * sq);
  return c;
}

double log_remaining(const TrajectoryContext& ctx, double t) {
  if (std::isnan(t) || t < 0.0) throw DomainError("trajectory: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double k = 1.0 / (ctx.two_r * ctx.c_eff);
  switch (ctx.form) {
    case TrajectoryContext::Form::zero_delta:
      return k * (-t + ctx.a * std::log1p(t / ctx.a));
    case TrajectoryContext::Form::infinite_delta:
      return k * (-t + ctx.a_exp * std::log1p(t / ctx.r2));
    case TrajectoryContext::Form::general:
      break;
  }
  return k * (-t + (ctx.a - ctx.a_exp) * std::log1p(t / ctx.r1) + ctx.a_exp * std::log1p(t / ctx.r2));
}

double implicit_I(const TrajectoryContext& ctx, double t) { return std::exp(log_remaining(ctx, t)) - 0.5; }

DoubleSwitchShape nor_rising_shape(const NorGateParams& p, bool plus) {
  p.validate();
  const double two_r = 2.0 * p.r;
  const double c3 = p.c_load * (p.r5 + two_r) / two_r;
  return plus ? DoubleSwitchShape{p.alpha1, p.alpha2, two_r, c3} : DoubleSwitchShape{p.alpha2, p.alpha1, two_r, c3};
}

DoubleSwitchShape cgate_shape(const CGateParams& p, Direction input_direction, bool plus) {
  p.validate();
  if (input_direction == Direction::rising) {
    const double two_r = 2.0 * p.r_n;
    const double c = p.c_load * (p.r5 + two_r) / two_r;
    return plus ? DoubleSwitchShape{p.alpha1, p.alpha2, two_r, c} : DoubleSwitchShape{p.alpha2, p.alpha1, two_r, c};
  }
  const double two_r = 2.0 * p.r_p;
  const double c = p.c_load * (p.r5 + two_r) / two_r;
  return plus ? DoubleSwitchShape{p.alpha4, p.alpha3, two_r, c} : DoubleSwitchShape{p.alpha3, p.alpha4, two_r, c};
}

double implicit_I(double t, double delta, const NorGateParams& p) {
  if (std::isnan(delta)) throw DomainError("implicit_I: delta is NaN");
  const auto ctx = make_trajectory_context(nor_rising_shape(p, plus_family(delta)), std::fabs(delta));
  return implicit_I(ctx, t);
}

bool is_nor_mode(ModeKind k) noexcept { return static_cast<int>(k) <= static_cast<int>(ModeKind::nor_downdown_minus); }

double eval_trajectory(const ModeSwitch& ms, const NorGateParams& p, double t, double v_dd) {
  if (!is_nor_mode(ms.kind)) throw DomainError("eval_trajectory: C-gate mode with NOR parameters");
  if (std::isnan(t) || t < 0.0) throw DomainError("eval_trajectory: t must be >= 0");
  const EffectiveCaps caps = effective_caps(p);
  const double r_par = p.r_n_a * p.r_n_b / (p.r_n_a + p.r_n_b);
  switch (ms.kind) {
    case ModeKind::nor_up_minus:
    case ModeKind::nor_down_plus:
      return ms.initial_v * std::exp(-t / (caps.c1 * p.r_n_a));
    case ModeKind::nor_up_plus:
    case ModeKind::nor_down_minus:
      return ms.initial_v * std::exp(-t / (caps.c1_prime * p.r_n_b));
    case ModeKind::nor_upup_plus:
    case ModeKind::nor_upup_minus:
      return ms.initial_v * std::exp(-t / (caps.c2 * r_par));
    case ModeKind::nor_downdown_plus:
    case ModeKind::nor_downdown_minus: {
      const bool plus = ms.kind == ModeKind::nor_downdown_plus;
      const auto ctx = make_trajectory_context(nor_rising_shape(p, plus), ms.delta, v_dd);
      return v_dd - (v_dd - ms.initial_v) * std::exp(log_remaining(ctx, t));
    }
    default:
      break;
  }
  throw DomainError("eval_trajectory: unknown mode");
}

double eval_trajectory(const ModeSwitch& ms, const CGateParams& p, double t, double v_dd) {
  if (is_nor_mode(ms.kind)) throw DomainError("eval_trajectory: NOR mode with C-gate parameters");
  if (std::isnan(t) || t < 0.0) throw DomainError("eval_trajectory: t must be >= 0");
  switch (ms.kind) {
    case ModeKind::c_up_a:
    case ModeKind::c_up_b:
    case ModeKind::c_down_a:
    case ModeKind::c_down_b:
      p.validate();
      return ms.initial_v;  // no conducting path: the keeper holds the node
    case ModeKind::c_upup_plus:
    case ModeKind::c_upup_minus: {
      const auto ctx = make_trajectory_context(cgate_shape(p, Direction::rising, ms.kind == ModeKind::c_upup_plus),
                                               ms.delta, v_dd);
      return v_dd - (v_dd - ms.initial_v) * std::exp(log_remaining(ctx, t));
    }
    case ModeKind::c_downdown_plus:
    case ModeKind::c_downdown_minus: {
      const auto ctx = make_trajectory_context(
          cgate_shape(p, Direction::falling, ms.kind == ModeKind::c_downdown_plus), ms.delta, v_dd);
      return ms.initial_v * std::exp(log_remaining(ctx, t));
    }
    default:
      break;
  }
  throw DomainError("eval_trajectory: unknown mode");
}

double delay_by_inversion(const NorGateParams& p, const DelayQuery& q) {
  if (std::isnan(q.delta)) throw DomainError("delay_by_inversion: delta is NaN");
  p.validate();
  const bool plus = plus_family(q.delta);
  const double sep = std::fabs(q.delta);
  if (q.output_direction == Direction::rising) {
    const auto ctx = make_trajectory_context(nor_rising_shape(p, plus), sep);
    return half_remaining_time(ctx) + p.delta_min;
  }
  // Falling output: first input's single-transistor discharge, then both in parallel.
  const double v_dd = 1.0;
  const ModeSwitch first{plus ? ModeKind::nor_up_minus : ModeKind::nor_up_plus, 0.0, v_dd};
  const ModeKind second_kind = plus ? ModeKind::nor_upup_plus : ModeKind::nor_upup_minus;
  const double v_at_sep = std::isinf(sep) ? 0.0 : eval_trajectory(first, p, sep, v_dd);
  auto chain = [&](double t) {
    if (t <= sep) return eval_trajectory(first, p, t, v_dd);
    return eval_trajectory(ModeSwitch{second_kind, 0.0, v_at_sep}, p, t - sep, v_dd);
  };
  const EffectiveCaps caps = effective_caps(p);
  const double hi = 2.0 * std::max(caps.c1 * p.r_n_a, caps.c1_prime * p.r_n_b);
  return crossing_with_expansion(chain, 0.5 * v_dd, hi, Edge::falling) + p.delta_min;
}

double delay_by_inversion(const CGateParams& p, const DelayQuery& q) {
  if (std::isnan(q.delta)) throw DomainError("delay_by_inversion: delta is NaN");
  const Direction in_dir = cgate_input_direction(p, q.output_direction);
  const auto ctx = make_trajectory_context(cgate_shape(p, in_dir, plus_family(q.delta)), std::fabs(q.delta));
  return half_remaining_time(ctx) + p.delta_min;
}

// ---------------------------------------------------------------------------------------------
// Full ODE

double PiecewiseTrajectory::t_begin() const {
  if (segments_.empty()) throw DomainError("empty trajectory");
  return segments_.front().t_begin();
}

double PiecewiseTrajectory::t_end() const {
  if (segments_.empty()) throw DomainError("empty trajectory");
  return segments_.back().t_end();
}

double PiecewiseTrajectory::value_at(double t) const {
  for (const auto& s : segments_)
    if (t <= s.t_end()) return s.value_at(std::max(t, s.t_begin()));
  throw DomainError("PiecewiseTrajectory::value_at: t beyond integrated span");
}

double PiecewiseTrajectory::first_crossing(double level, Edge dir, double t_from) const {
  auto crossed = [&](double v) { return dir == Edge::rising ? v >= level : v <= level; };
  for (const auto& seg : segments_) {
    if (seg.t_end() < t_from) continue;
    if (seg.t_begin() >= t_from && crossed(seg.value_at(seg.t_begin()))) return seg.t_begin();
    for (const auto& st : seg.steps()) {
      const double t1 = st.t0 + st.h;
      if (t1 < t_from) continue;
      const double v1 = st.r1 + st.r2;
      if (!crossed(v1)) continue;
      const double lo = std::max(st.t0, t_from);
      if (crossed(seg.value_at(lo))) return lo;
      return bisect_threshold_crossing([&](double t) { return seg.value_at(t); }, level, lo, t1, dir, kBisectTol);
    }
  }
  throw NoCrossingError("full ODE trajectory does not cross the threshold");
}

namespace {

// Conductance of a series pair of switching-on transistors plus their on-resistance.
double stack_conductance(double alpha_a, double t_on_a, double alpha_b, double t_on_b, double two_r, double t) {
  // alpha / (t - t_on) is infinite at the switch instant and zero for t_on = -inf; 1/inf = 0
  const double ra = std::isinf(t_on_a) ? 0.0 : alpha_a / (t - t_on_a);
  const double rb = std::isinf(t_on_b) ? 0.0 : alpha_b / (t - t_on_b);
  return 1.0 / (ra + rb + two_r);
}

struct Conductances {
  double up, down, f_const;
};

template <typename CondFn>
PiecewiseTrajectory run_scenario(const OdeScenario& sc, const FullOdeOptions& opt, double c_load, double r5,
                                 CondFn&& conductances) {
  if (!(sc.t_end >= sc.t_begin)) throw DomainError("full ODE: t_end < t_begin");
  bool in[2] = {sc.a0, sc.b0};
  double t_switch[2] = {-kInf, -kInf};
  PiecewiseTrajectory out;
  double t = sc.t_begin, v = sc.v0;
  std::size_t k = 0;
  const double vdd = opt.v_dd;
  while (true) {
    double t_next = sc.t_end;
    if (k < sc.transitions.size()) t_next = std::min(sc.transitions[k].time, sc.t_end);
    if (t_next < t) throw DomainError("full ODE: transitions must be time ordered and within the span");
    const bool a = in[0], b = in[1];
    const double ta = t_switch[0], tb = t_switch[1];
    auto rhs = [&](double tt, double vv) {
      const Conductances g = conductances(a, b, ta, tb, tt);
      const double g_tot = g.up + g.down;
      const double f = opt.exact_f ? 1.0 / (r5 * g_tot + 1.0) : g.f_const;
      return f * (vdd * g.up - vv * g_tot) / c_load;
    };
    OdeSolution seg = integrate_ode(rhs, v, t, t_next, opt.tol);
    v = seg.final_value();
    out.add(std::move(seg));
    t = t_next;
    if (k >= sc.transitions.size() || sc.transitions[k].time > sc.t_end) break;
    // apply every transition at this instant
    while (k < sc.transitions.size() && sc.transitions[k].time == t) {
      const auto& tr = sc.transitions[k];
      if (tr.input != 0 && tr.input != 1) throw DomainError("full ODE: input index must be 0 or 1");
      if (in[tr.input] != tr.value) {
        in[tr.input] = tr.value;
        t_switch[tr.input] = t;
      }
      ++k;
    }
  }
  return out;
}

}  // namespace

PiecewiseTrajectory integrate_full_ode(const NorGateParams& p, const OdeScenario& sc, const FullOdeOptions& opt) {
  p.validate();
  const double two_r = 2.0 * p.r;
  const double f_a = p.r_n_a / (p.r5 + p.r_n_a);
  const double f_b = p.r_n_b / (p.r5 + p.r_n_b);
  const double f_ab = p.r_n_a * p.r_n_b / (p.r5 * (p.r_n_a + p.r_n_b) + p.r_n_a * p.r_n_b);
  const double f_up = two_r / (p.r5 + two_r);
  auto cond = [&](bool a, bool b, double ta, double tb, double t) {
    // pMOS switch on when their input falls; nMOS switch instantaneously
    const double up = (!a && !b) ? stack_conductance(p.alpha1, ta, p.alpha2, tb, two_r, t) : 0.0;
    const double down = (a ? 1.0 / p.r_n_a : 0.0) + (b ? 1.0 / p.r_n_b : 0.0);
    const double f = a ? (b ? f_ab : f_a) : (b ? f_b : f_up);
    return Conductances{up, down, f};
  };
  return run_scenario(sc, opt, p.c_load, p.r5, cond);
}

PiecewiseTrajectory integrate_full_ode(const CGateParams& p, const OdeScenario& sc, const FullOdeOptions& opt) {
  p.validate();
  const double two_rn = 2.0 * p.r_n, two_rp = 2.0 * p.r_p;
  const double f_up = two_rn / (p.r5 + two_rn), f_dn = two_rp / (p.r5 + two_rp);
  auto cond = [&](bool a, bool b, double ta, double tb, double t) {
    if (a && b) return Conductances{stack_conductance(p.alpha1, ta, p.alpha2, tb, two_rn, t), 0.0, f_up};
    if (!a && !b) return Conductances{0.0, stack_conductance(p.alpha4, ta, p.alpha3, tb, two_rp, t), f_dn};
    return Conductances{0.0, 0.0, 1.0};
  };
  return run_scenario(sc, opt, p.c_load, p.r5, cond);
}

namespace {

// Two inputs moving to `value`: the '+' family moves A first. Returns the reference time.
double build_pair(OdeScenario& sc, bool value, double delta, bool second_is_reference) {
  const bool plus = plus_family(delta);
  const double sep = std::fabs(delta);
  const int first = plus ? 0 : 1, second = 1 - first;
  bool init[2] = {!value, !value};
  double ref;
  if (std::isinf(sep)) {
    if (second_is_reference) {
      init[first] = value;  // switched at -infinity
      sc.transitions.push_back({0.0, second, value});
    } else {
      sc.transitions.push_back({0.0, first, value});  // the other input never follows
    }
    ref = 0.0;
  } else {
    sc.transitions.push_back({0.0, first, value});
    sc.transitions.push_back({sep, second, value});
    ref = second_is_reference ? sep : 0.0;
  }
  sc.a0 = init[0];
  sc.b0 = init[1];
  return ref;
}

template <typename Params>
double ode_delay(const Params& p, OdeScenario sc, double ref, double level, Edge dir, double horizon,
                 const FullOdeOptions& opt) {
  double last_transition = sc.transitions.empty() ? 0.0 : sc.transitions.back().time;
  sc.t_begin = 0.0;
  double span = horizon;
  for (int i = 0; i < 12; ++i, span *= 2.0) {
    sc.t_end = std::max(ref, last_transition) + span;
    const PiecewiseTrajectory tr = integrate_full_ode(p, sc, opt);
    try {
      return tr.first_crossing(level, dir, 0.0) - ref;
    } catch (const NoCrossingError&) {
    }
  }
  throw NoCrossingError("full ODE: output never crosses the threshold");
}

}  // namespace

double delay_by_ode(const NorGateParams& p, const DelayQuery& q, const FullOdeOptions& opt) {
  if (std::isnan(q.delta)) throw DomainError("delay_by_ode: delta is NaN");
  const NorDelayModel model(p);
  const double horizon = 4.0 * (model.delay(q) - p.delta_min);
  OdeScenario sc;
  if (q.output_direction == Direction::falling) {
    sc.v0 = opt.v_dd;
    const double ref = build_pair(sc, true, q.delta, false);
    return ode_delay(p, sc, ref, 0.5 * opt.v_dd, Edge::falling, horizon, opt) + p.delta_min;
  }
  sc.v0 = 0.0;
  const double ref = build_pair(sc, false, q.delta, true);
  return ode_delay(p, sc, ref, 0.5 * opt.v_dd, Edge::rising, horizon, opt) + p.delta_min;
}

double delay_by_ode(const CGateParams& p, const DelayQuery& q, const FullOdeOptions& opt) {
  if (std::isnan(q.delta)) throw DomainError("delay_by_ode: delta is NaN");
  const CGateDelayModel model(p);
  const Direction in_dir = cgate_input_direction(p, q.output_direction);
  const double horizon = 4.0 * (model.delay_for_inputs(in_dir, q.delta) - p.delta_min);
  OdeScenario sc;
  const bool up = in_dir == Direction::rising;
  sc.v0 = up ? 0.0 : opt.v_dd;
  const double ref = build_pair(sc, up, q.delta, true);
  return ode_delay(p, sc, ref, 0.5 * opt.v_dd, up ? Edge::rising : Edge::falling, horizon, opt) + p.delta_min;
}

}  // namespace misdta
