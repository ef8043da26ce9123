#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "misdta/characterization.hpp"
#include "misdta/errors.hpp"
#include "misdta/numerics/root_finding.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace misdta;
using testutil::rel_diff;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_param_diff(const NorGateParams& a, const NorGateParams& b) {
  return std::max({rel_diff(a.r_n_a, b.r_n_a), rel_diff(a.r_n_b, b.r_n_b), rel_diff(a.r, b.r),
                   rel_diff(a.alpha1, b.alpha1), rel_diff(a.alpha2, b.alpha2), rel_diff(a.c_load, b.c_load),
                   // r5 may be zero; compare on the scale of the pulldown
                   std::fabs(a.r5 - b.r5) / std::max(a.r_n_a, b.r_n_a), rel_diff(a.delta_min, b.delta_min)});
}

double max_param_diff(const CGateParams& a, const CGateParams& b) {
  return std::max({rel_diff(a.r_n, b.r_n), rel_diff(a.r_p, b.r_p), rel_diff(a.alpha1, b.alpha1),
                   rel_diff(a.alpha2, b.alpha2), rel_diff(a.alpha3, b.alpha3), rel_diff(a.alpha4, b.alpha4),
                   rel_diff(a.c_load, b.c_load), std::fabs(a.r5 - b.r5) / std::max(a.r_n, b.r_n),
                   rel_diff(a.delta_min, b.delta_min)});
}

double max_delay_diff(const MeasuredDelays& a, const MeasuredDelays& b) {
  return std::max({rel_diff(a.d_down_minus_inf, b.d_down_minus_inf), rel_diff(a.d_down_zero, b.d_down_zero),
                   rel_diff(a.d_down_inf, b.d_down_inf), rel_diff(a.d_up_minus_inf, b.d_up_minus_inf),
                   rel_diff(a.d_up_zero, b.d_up_zero), rel_diff(a.d_up_inf, b.d_up_inf)});
}

bool has(const std::vector<Violation>& v, const std::string& id) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.invariant == id; });
}

}  // namespace

TEST(CharFn, InverseConsistency) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const double c3 = p.c_load * (p.r5 + 2 * p.r) / (2 * p.r);
  for (double t : {2.7e-12, 3.5e-12, 10e-12, 100e-12}) {
    const double alpha = char_fn_A(t, p.r, p.r5, p.c_load);
    EXPECT_GT(alpha, 0.0);
    // a single switching-on transistor with that slope reaches the threshold after t
    EXPECT_LE(rel_diff(oracle::stack_crossing(1.0, alpha, kInf, 2 * p.r, c3), t), 1e-10) << t;
  }
}

TEST(CharFn, DomainBoundary) {
  const double r = 1000, r5 = 200, c = 1e-15;
  const double bound = c * (r5 + 2 * r) * std::numbers::ln2;
  EXPECT_THROW(char_fn_A(bound, r, r5, c), DomainError);
  EXPECT_THROW(char_fn_A(0.5 * bound, r, r5, c), DomainError);
  // approaching the RC bound from above the slope vanishes
  EXPECT_LT(char_fn_A(bound * (1 + 1e-9), r, r5, c), 1e-6 * char_fn_A(2 * bound, r, r5, c));
}

TEST(CharacterizeNor, ResidualRecoversR) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const auto m = forward_delays(p);
  // every B stays defined while ln2*C*(R5+2R) is below the smallest rising delay
  const double t_min = std::min({m.d_up_zero, m.d_up_inf, m.d_up_minus_inf}) - m.delta_min;
  const double r_hi = 0.5 * (t_min / (m.c_chosen * std::numbers::ln2) - p.r5) * (1 - 1e-12);
  const double r = find_root_bracketed([&](double rr) { return nor_r_residual(m, p.r5, rr); }, 500.0, r_hi,
                                       Tolerance{1e-14, 0.0, 200});
  EXPECT_NEAR(r, 1277.1, 1277.1 * 1e-9);
}

TEST(CharacterizeNor, FixtureRoundTrips) {
  for (const auto& name : testutil::fixture_names()) {
    if (name.rfind("nor", 0) != 0) continue;
    const auto p = testutil::load_nor(name);
    const auto m = forward_delays(p);
    EXPECT_TRUE(validate_measured(m, GateKind::nor2).empty()) << name;
    const auto q = characterize_nor(m);
    EXPECT_LE(max_param_diff(p, q), 1e-6) << name;
    EXPECT_LE(max_delay_diff(m, forward_delays(q)), 1e-9) << name;
  }
}

TEST(CharacterizeNor, ShortWireValues) {
  const auto q = characterize_nor(forward_delays(testutil::load_nor("nor_15nm_l3um")));
  EXPECT_NEAR(q.r_n_a, 2193.6, 2193.6e-6);
  EXPECT_NEAR(q.r_n_b, 2011.0, 2011.0e-6);
  EXPECT_NEAR(q.r5, 399.41, 399.41e-6);
  EXPECT_NEAR(q.r, 1277.1, 1277.1e-6);
  EXPECT_NEAR(q.alpha1, 1.078e-9, 1.078e-15);
  EXPECT_NEAR(q.alpha2, 0.5102e-9, 0.5102e-15);
}

TEST(CharacterizeNor, SymmetricPulldown) {
  auto m = forward_delays(testutil::load_nor("nor_15nm_l3um"));
  m.d_down_minus_inf = m.d_down_inf;
  const auto q = characterize_nor(m);
  EXPECT_DOUBLE_EQ(q.r_n_a, q.r_n_b);
  EXPECT_NEAR(q.r_n_a * std::numbers::ln2 * m.c_chosen, 2 * (m.d_down_inf - m.d_down_zero), 1e-24);
}

TEST(CharacterizeNor, RejectsDelayBelowPureDelay) {
  auto m = forward_delays(testutil::load_nor("nor_15nm_l3um"));
  m.d_down_zero = 0.5 * m.delta_min;
  EXPECT_THROW(characterize_nor(m), ValidationError);
}

TEST(CharacterizeNor, RandomRoundTrips) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = testutil::random_nor(rng);
    const auto m = forward_delays(p);
    const auto q = characterize_nor(m);
    EXPECT_LE(max_param_diff(p, q), 1e-6) << i;
    EXPECT_LE(max_delay_diff(m, forward_delays(q)), 1e-9) << i;
  }
}

TEST(CharacterizeNor, CapacitanceFreedom) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto m = forward_delays(testutil::random_nor(rng));
    auto m10 = m;
    m10.c_chosen *= 10;
    const NorDelayModel a(characterize_nor(m)), b(characterize_nor(m10));
    for (int k = 0; k < 50; ++k) {
      const double d = -30e-12 + 60e-12 * k / 49;
      for (Direction dir : {Direction::rising, Direction::falling})
        EXPECT_LE(rel_diff(a.delay(dir, d), b.delay(dir, d)), 1e-9) << i << " " << d;
    }
  }
}

TEST(CharacterizeNor, ResidualMonotoneOnFixtures) {
  for (const auto& name : testutil::fixture_names()) {
    if (name.rfind("nor", 0) != 0) continue;
    const auto p = testutil::load_nor(name);
    const auto m = forward_delays(p);
    const double r_max = std::min({m.d_up_zero, m.d_up_inf, m.d_up_minus_inf}) - m.delta_min;
    const double z_max = r_max / (m.c_chosen * std::numbers::ln2);
    const double r_hi = 0.5 * (z_max - p.r5) * (1 - 1e-9);
    int sign_changes = 0;
    double prev = nor_r_residual(m, p.r5, 1e-2);
    for (int i = 1; i <= 400; ++i) {
      const double r = 1e-2 * std::pow(r_hi / 1e-2, i / 400.0);
      const double f = nor_r_residual(m, p.r5, r);
      if ((f > 0) != (prev > 0)) ++sign_changes;
      prev = f;
    }
    EXPECT_EQ(sign_changes, 1) << name;
  }
}

TEST(CharacterizeCGate, IsolatedFixtureRoundTrip) {
  const auto p = testutil::load_cgate("cgate_15nm_isolated");
  const auto m = forward_delays(p);
  const auto q = characterize_cgate(m);
  EXPECT_LE(max_param_diff(p, q), 1e-6);
  EXPECT_LE(max_delay_diff(m, forward_delays(q)), 1e-9);
}

TEST(CharacterizeCGate, DefaultR5IsZero) {
  const auto m = forward_delays(testutil::load_cgate("cgate_15nm_l3um"));
  const auto xy = cgate_stack_resistances(m);
  const auto q = characterize_cgate(m);
  EXPECT_EQ(q.r5, 0.0);
  EXPECT_EQ(q.r_n, xy.x / 2);
  EXPECT_EQ(q.r_p, xy.y / 2);
}

TEST(CharacterizeCGate, FixtureRoundTrips) {
  for (const auto& name : testutil::fixture_names()) {
    if (name.rfind("cgate", 0) != 0) continue;
    const auto p = testutil::load_cgate(name);
    const auto m = forward_delays(p);
    const auto q = characterize_cgate(m, p.r5);
    EXPECT_LE(max_param_diff(p, q), 1e-6) << name;
    EXPECT_LE(max_delay_diff(m, forward_delays(q)), 1e-9) << name;
  }
}

TEST(CharacterizeCGate, R5Freedom) {
  for (const auto& name : testutil::fixture_names()) {
    if (name.rfind("cgate", 0) != 0) continue;
    const auto m = forward_delays(testutil::load_cgate(name));
    const auto xy = cgate_stack_resistances(m);
    const CGateDelayModel a(characterize_cgate(m, 0.0)), b(characterize_cgate(m, 0.9 * std::min(xy.x, xy.y)));
    for (Direction in : {Direction::rising, Direction::falling}) {
      const auto& bp = a.breakpoints(in);
      for (int k = 0; k < 50; ++k) {
        const double d = -1.5 * bp.neg + 1.5 * (bp.neg + bp.pos) * k / 49;
        EXPECT_LE(rel_diff(a.delay_for_inputs(in, d), b.delay_for_inputs(in, d)), 1e-9) << name << " " << d;
      }
    }
  }
}

TEST(CharacterizeCGate, R5OutOfRange) {
  const auto m = forward_delays(testutil::load_cgate("cgate_15nm_l3um"));
  const auto xy = cgate_stack_resistances(m);
  EXPECT_THROW(characterize_cgate(m, -1.0), ValidationError);
  EXPECT_THROW(characterize_cgate(m, std::min(xy.x, xy.y)), ValidationError);
}

TEST(CharacterizeCGate, RandomRoundTrips) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto p = testutil::random_cgate(rng);
    const auto m = forward_delays(p);
    const auto q = characterize_cgate(m, p.r5);
    EXPECT_LE(max_param_diff(p, q), 1e-6) << i;
    EXPECT_LE(max_delay_diff(m, forward_delays(q)), 1e-9) << i;
  }
}

TEST(ValidateMeasured, Examples) {
  const auto m = forward_delays(testutil::load_nor("nor_15nm_l15um"));
  EXPECT_TRUE(validate_measured(m, GateKind::nor2).empty());

  auto bad = m;
  bad.d_down_zero = 0.5 * (m.d_down_inf + m.d_down_zero);
  bad.d_down_minus_inf = bad.d_down_zero - 0.1e-12;
  bad.d_down_inf = bad.d_down_zero + 0.1e-12;
  EXPECT_TRUE(has(validate_measured(bad, GateKind::nor2), "epsilon-real"));

  bad = m;
  bad.delta_min = m.d_up_inf + 1e-13;
  EXPECT_TRUE(has(validate_measured(bad, GateKind::nor2), "delay-exceeds-delta-min"));

  bad = m;
  bad.d_up_zero = m.d_up_inf;
  EXPECT_TRUE(has(validate_measured(bad, GateKind::nor2), "up-family-peak"));

  bad = m;
  bad.c_chosen = 0.0;
  bad.delta_min = -1.0;
  const auto v = validate_measured(bad, GateKind::nor2);
  EXPECT_TRUE(has(v, "c-positive"));
  EXPECT_TRUE(has(v, "delta-min-nonnegative"));

  bad = m;
  bad.d_up_inf = std::nan("");
  EXPECT_TRUE(has(validate_measured(bad, GateKind::nor2), "finite"));

  const auto mc = forward_delays(testutil::load_cgate("cgate_15nm_l3um"));
  EXPECT_TRUE(validate_measured(mc, GateKind::cgate).empty());
  auto badc = mc;
  badc.d_down_zero = mc.d_down_inf;
  EXPECT_TRUE(has(validate_measured(badc, GateKind::cgate), "down-family-peak"));
}
