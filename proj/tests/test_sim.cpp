#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "misdta/errors.hpp"
#include "misdta/sim/netlist.hpp"
#include "misdta/sim/simulator.hpp"
#include "misdta/sim/stimulus.hpp"
#include "fixtures.hpp"

using namespace misdta;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Stimulus explicit_times(std::vector<double> t) { return Stimulus{0, 0, 0, 0, std::move(t)}; }

// One gate fed by two sources; nets A, B, Y.
Netlist single_gate(const GateParams& params, bool a0, bool b0, std::vector<double> ta, std::vector<double> tb) {
  Netlist nl;
  nl.param_sets.emplace("p", params);
  const bool is_nor = std::holds_alternative<NorGateParams>(params);
  bool y0;
  if (is_nor) {
    y0 = !(a0 || b0);
  } else {
    const bool inv = std::get<CGateParams>(params).inverted;
    y0 = inv ? !a0 : a0;  // tests start C gates with agreeing inputs
  }
  nl.nets = {{"A", a0}, {"B", b0}, {"Y", y0}};
  nl.gates.push_back({"srcA", ElementKind::input_source, "", "", "A", "", explicit_times(std::move(ta))});
  nl.gates.push_back({"srcB", ElementKind::input_source, "", "", "B", "", explicit_times(std::move(tb))});
  nl.gates.push_back({"g", is_nor ? ElementKind::nor2 : ElementKind::cgate, "A", "B", "Y", "p", std::nullopt});
  return nl;
}

const std::vector<Transition>& net(const SimResult& r, const std::string& name) {
  for (std::size_t i = 0; i < r.trace.net_names.size(); ++i)
    if (r.trace.net_names[i] == name) return r.trace.transitions[i];
  throw std::runtime_error("no net " + name);
}

}  // namespace

TEST(Stimulus, Deterministic) {
  EXPECT_EQ(generate_stimulus_times(50e-12, 30e-12, 500, 42), generate_stimulus_times(50e-12, 30e-12, 500, 42));
  EXPECT_NE(generate_stimulus_times(50e-12, 30e-12, 500, 42), generate_stimulus_times(50e-12, 30e-12, 500, 43));
}

TEST(Stimulus, ZeroSigmaEvenlySpaced) {
  const auto t = generate_stimulus_times(50e-12, 0.0, 100, 1);
  ASSERT_EQ(t.size(), 100u);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(t[k], (k + 1) * 50e-12);
}

TEST(Stimulus, SampleStatistics) {
  const auto t = generate_stimulus_times(50e-12, 30e-12, 1000, 1);
  ASSERT_EQ(t.size(), 1000u);
  double prev = 0.0, sum = 0.0;
  for (double x : t) {
    EXPECT_GE(x - prev, 1e-12);
    sum += x - prev;
    prev = x;
  }
  EXPECT_NEAR(sum / 1000, 50e-12, 5e-12);
}

TEST(Stimulus, Alternates) {
  const auto e = generate_stimulus(50e-12, 10e-12, 7, 3, true);
  ASSERT_EQ(e.size(), 7u);
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(e[i].value, i % 2 == 1);
}

TEST(Stimulus, InvalidArguments) {
  EXPECT_THROW(generate_stimulus_times(0.0, 1e-12, 3, 1), ValidationError);
  EXPECT_THROW(generate_stimulus_times(1e-12, -1.0, 3, 1), ValidationError);
}

TEST(Chain, Structure) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const Stimulus s{50e-12, 30e-12, 10, 1, std::nullopt};
  const auto one = build_cross_coupled_chain(1, p, s, s);
  EXPECT_EQ(one.logic_gate_count(), 2u);
  EXPECT_EQ(one.nets.size(), 4u);
  const auto fifty = build_cross_coupled_chain(50, p, s, s);
  EXPECT_EQ(fifty.logic_gate_count(), 100u);
  EXPECT_NO_THROW(fifty.validate());
  std::map<std::string, int> drivers;
  for (const auto& g : fifty.gates) ++drivers[g.out];
  for (const auto& n : fifty.nets) EXPECT_EQ(drivers[n.name], 1) << n.name;
  // stage 2 takes both stage-1 outputs
  EXPECT_EQ(fifty.gates[4].a, "U1");
  EXPECT_EQ(fifty.gates[4].b, "L1");
  EXPECT_EQ(fifty.gates[5].a, "L1");
  EXPECT_EQ(fifty.gates[5].b, "U1");
  EXPECT_THROW(build_cross_coupled_chain(0, p, s, s), ValidationError);
}

TEST(Netlist, ValidationErrors) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  auto nl = single_gate(p, false, false, {}, {});
  EXPECT_NO_THROW(nl.validate());
  auto bad = nl;
  bad.nets[2].init = false;  // not the NOR steady state
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = nl;
  bad.gates[2].b = "nowhere";
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = nl;
  bad.gates[1].out = "A";  // two drivers
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = nl;
  bad.gates[2].params = "missing";
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Simulator, EmptyStimulus) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const auto r = run(single_gate(p, false, false, {}, {}));
  EXPECT_TRUE(net(r, "Y").empty());
  EXPECT_EQ(r.stats.events_processed, 0u);
}

TEST(Simulator, SingleInputFallExact) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const double t = 13e-12;
  const auto r = run(single_gate(p, false, false, {t}, {}));
  ASSERT_EQ(net(r, "Y").size(), 1u);
  const auto c = effective_caps(p);
  EXPECT_EQ(net(r, "Y")[0].time, t + nor_delay(p, {Direction::falling, kInf}));
  EXPECT_NEAR(net(r, "Y")[0].time, t + std::log(2.0) * c.c1 * p.r_n_a + p.delta_min, 1e-24);
  EXPECT_FALSE(net(r, "Y")[0].value);
}

TEST(Simulator, MisFallReplacesSisSchedule) {
  const auto p = testutil::load_nor("nor_15nm_l15um");
  const auto bp = nor_breakpoints(p);
  for (double f : {0.0, 0.1, 0.5, 0.9}) {
    const double d = f * bp.fall_pos;
    const auto r = run(single_gate(p, false, false, {10e-12}, {10e-12 + d}));
    ASSERT_EQ(net(r, "Y").size(), 1u) << f;
    EXPECT_EQ(net(r, "Y")[0].time, 10e-12 + nor_delay(p, {Direction::falling, d})) << f;
    // B first: the '-' family
    const auto r2 = run(single_gate(p, false, false, {10e-12 + d}, {10e-12}));
    ASSERT_EQ(net(r2, "Y").size(), 1u);
    EXPECT_EQ(net(r2, "Y")[0].time, 10e-12 + nor_delay(p, {Direction::falling, -d})) << f;
  }
}

TEST(Simulator, MisRiseExact) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  for (double d : {0.0, 0.3e-12, 0.8e-12, 3e-12}) {
    const auto r = run(single_gate(p, true, true, {5e-12}, {5e-12 + d}));
    ASSERT_EQ(net(r, "Y").size(), 1u);
    EXPECT_EQ(net(r, "Y")[0].time, 5e-12 + d + nor_delay(p, {Direction::rising, d})) << d;
    EXPECT_TRUE(net(r, "Y")[0].value);
    const auto r2 = run(single_gate(p, true, true, {5e-12 + d}, {5e-12}));
    EXPECT_EQ(net(r2, "Y")[0].time, 5e-12 + d + nor_delay(p, {Direction::rising, -d})) << d;
  }
}

TEST(Simulator, PulseShorterThanDelayIsCanceled) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const auto r = run(single_gate(p, false, false, {10e-12, 11e-12}, {}));
  EXPECT_TRUE(net(r, "Y").empty());
  EXPECT_EQ(r.stats.events_canceled, 1u);
}

TEST(Simulator, DelayedComplementOfSlowPulses) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  std::vector<double> ta;
  for (int i = 1; i <= 40; ++i) ta.push_back(i * 200e-12);
  const auto r = run(single_gate(p, false, false, ta, {}));
  const auto& y = net(r, "Y");
  ASSERT_EQ(y.size(), ta.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const bool a_high = i % 2 == 0;
    EXPECT_EQ(y[i].value, !a_high);
    // B low since -inf: falling uses delta = +inf, rising (A is the later falling edge) delta = -inf
    const DelayQuery q = a_high ? DelayQuery{Direction::falling, kInf} : DelayQuery{Direction::rising, -kInf};
    EXPECT_EQ(y[i].time, ta[i] + nor_delay(p, q));
  }
}

TEST(Simulator, CGateWaitsForAgreement) {
  const auto p = testutil::load_cgate("cgate_15nm_l3um");
  const CGateDelayModel m(p);
  const auto r = run(single_gate(p, false, false, {10e-12}, {14e-12}));
  ASSERT_EQ(net(r, "Y").size(), 1u);
  EXPECT_EQ(net(r, "Y")[0].time, 14e-12 + m.delay_for_inputs(Direction::rising, 4e-12));
  EXPECT_TRUE(net(r, "Y")[0].value);
  // disagreement only: output holds
  EXPECT_TRUE(net(run(single_gate(p, false, false, {10e-12}, {})), "Y").empty());
  // falling pair, B first
  const auto r2 = run(single_gate(p, true, true, {10.5e-12}, {10e-12}));
  ASSERT_EQ(net(r2, "Y").size(), 1u);
  EXPECT_EQ(net(r2, "Y")[0].time, 10.5e-12 + m.delay_for_inputs(Direction::falling, -0.5e-12));
}

TEST(Simulator, CGateInverted) {
  auto p = testutil::load_cgate("cgate_15nm_l3um");
  p.inverted = true;
  const CGateDelayModel m(p);
  const auto r = run(single_gate(p, false, false, {10e-12}, {11e-12}));
  ASSERT_EQ(net(r, "Y").size(), 1u);
  EXPECT_FALSE(net(r, "Y")[0].value);
  EXPECT_EQ(net(r, "Y")[0].time, 11e-12 + m.delay_for_inputs(Direction::rising, 1e-12));
}

TEST(Simulator, ChainDeterministicAlternatingCausal) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const auto nl = build_cross_coupled_chain(8, p, Stimulus{50e-12, 30e-12, 300, 1, std::nullopt},
                                            Stimulus{50e-12, 30e-12, 300, 2, std::nullopt});
  const auto a = run(nl), b = run(nl);
  EXPECT_EQ(a.trace.transitions, b.trace.transitions);
  EXPECT_EQ(a.stats.events_processed, b.stats.events_processed);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.trace.transitions.size(); ++i) {
    bool v = a.trace.initial[i];
    double prev = -kInf;
    for (const auto& t : a.trace.transitions[i]) {
      EXPECT_NE(t.value, v);
      EXPECT_GE(t.time, prev);
      v = t.value;
      prev = t.time;
    }
    total += a.trace.transitions[i].size();
    EXPECT_EQ(a.stats.transitions_per_net[i], a.trace.transitions[i].size());
  }
  EXPECT_EQ(total, a.stats.events_processed);

  // every gate output follows some input edge by at least the pure delay
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < a.trace.net_names.size(); ++i) idx[a.trace.net_names[i]] = i;
  for (const auto& g : nl.gates) {
    if (g.kind == ElementKind::input_source) continue;
    for (const auto& t : a.trace.transitions[idx[g.out]]) {
      bool found = false;
      for (const auto& in : {g.a, g.b})
        for (const auto& e : a.trace.transitions[idx[in]])
          if (e.time <= t.time - p.delta_min + 1e-18) found = true;
      EXPECT_TRUE(found) << g.id << " " << t.time;
    }
  }
}

TEST(Simulator, Quiescence) {
  const auto p = testutil::load_nor("nor_15nm_l15um");
  const auto nl = build_cross_coupled_chain(6, p, Stimulus{80e-12, 20e-12, 50, 5, std::nullopt},
                                            Stimulus{80e-12, 20e-12, 51, 6, std::nullopt});
  const auto r = run(nl);
  std::map<std::string, bool> final_v;
  for (std::size_t i = 0; i < r.trace.net_names.size(); ++i)
    final_v[r.trace.net_names[i]] = r.trace.transitions[i].empty() ? r.trace.initial[i] : r.trace.transitions[i].back().value;
  for (const auto& g : nl.gates)
    if (g.kind == ElementKind::nor2) EXPECT_EQ(final_v[g.out], !(final_v[g.a] || final_v[g.b])) << g.id;
}

TEST(Simulator, LivelockGuardAndTimeLimit) {
  const auto p = testutil::load_nor("nor_15nm_l3um");
  const auto nl = build_cross_coupled_chain(4, p, Stimulus{50e-12, 10e-12, 100, 1, std::nullopt},
                                            Stimulus{50e-12, 10e-12, 100, 2, std::nullopt});
  EXPECT_THROW(run(nl, SimOptions{kInf, 10}), LivelockError);
  const auto r = run(nl, SimOptions{500e-12, 100'000'000});
  for (const auto& tr : r.trace.transitions)
    for (const auto& t : tr) EXPECT_LE(t.time, 500e-12);
}
