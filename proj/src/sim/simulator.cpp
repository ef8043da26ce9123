#include "misdta/sim/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>

#include "misdta/errors.hpp"
#include "misdta/sim/stimulus.hpp"

namespace misdta {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Rounding slack for the causality check, seconds.
constexpr double kCausalitySlack = 1e-18;

struct QueuedEvent {
  double time;
  std::uint64_t seq;
  std::uint32_t net;
  bool value;
  std::int32_t gate;  // -1 for source edges

  bool operator>(const QueuedEvent& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

struct GateRt {
  ElementKind kind;
  std::uint32_t in_net[2];
  std::uint32_t out_net;
  std::uint32_t model;
  bool in[2];
  double t_rise[2] = {-kInf, -kInf};
  double t_fall[2] = {-kInf, -kInf};
  bool out;  // committed output
  bool has_pending = false;
  bool pend_value = false;
  double pend_time = 0.0;
  std::uint64_t pend_seq = 0;
};

class Engine {
 public:
  Engine(const Netlist& nl, const SimOptions& opts) : opts_(opts) {
    nl.validate();
    std::unordered_map<std::string, std::uint32_t> net_index;
    for (const auto& n : nl.nets) {
      net_index.emplace(n.name, static_cast<std::uint32_t>(trace_.net_names.size()));
      trace_.net_names.push_back(n.name);
      trace_.initial.push_back(n.init);
    }
    value_ = trace_.initial;
    trace_.transitions.resize(value_.size());
    fanout_.resize(value_.size());

    std::unordered_map<std::string, std::uint32_t> model_index;
    for (const auto& [name, ps] : nl.param_sets) {
      if (const auto* p = std::get_if<NorGateParams>(&ps)) {
        model_index.emplace(name, static_cast<std::uint32_t>(nor_models_.size()));
        nor_models_.emplace_back(*p);
      } else {
        model_index.emplace(name, static_cast<std::uint32_t>(c_models_.size()));
        c_models_.emplace_back(std::get<CGateParams>(ps));
      }
    }

    for (const auto& g : nl.gates) {
      const std::uint32_t out = net_index.at(g.out);
      if (g.kind == ElementKind::input_source) {
        schedule_source(*g.stimulus, out);
        continue;
      }
      GateRt rt{};
      rt.kind = g.kind;
      rt.in_net[0] = net_index.at(g.a);
      rt.in_net[1] = net_index.at(g.b);
      rt.out_net = out;
      rt.model = model_index.at(g.params);
      rt.in[0] = value_[rt.in_net[0]];
      rt.in[1] = value_[rt.in_net[1]];
      rt.out = value_[out];
      rt.t_rise[0] = rt.t_rise[1] = rt.t_fall[0] = rt.t_fall[1] = -kInf;
      const auto gi = static_cast<std::uint32_t>(gates_.size());
      fanout_[rt.in_net[0]].push_back({gi, 0});
      fanout_[rt.in_net[1]].push_back({gi, 1});
      gates_.push_back(rt);
    }
  }

  SimResult run() {
    const auto start = std::chrono::steady_clock::now();
    while (!queue_.empty()) {
      const QueuedEvent ev = queue_.top();
      if (ev.time > opts_.t_end) break;
      queue_.pop();
      if (ev.gate >= 0) {
        GateRt& g = gates_[ev.gate];
        if (!g.has_pending || g.pend_seq != ev.seq) continue;  // superseded
        g.has_pending = false;
        g.out = ev.value;
      }
      if (value_[ev.net] == ev.value) continue;
      commit(ev);
    }
    SimResult r;
    r.stats = stats_;
    r.stats.transitions_per_net.reserve(value_.size());
    for (const auto& t : trace_.transitions) r.stats.transitions_per_net.push_back(t.size());
    r.stats.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.trace = std::move(trace_);
    return r;
  }

 private:
  struct Pin {
    std::uint32_t gate;
    int pin;
  };

  void push(double time, std::uint32_t net, bool value, std::int32_t gate) {
    queue_.push({time, next_seq_++, net, value, gate});
  }

  void schedule_source(const Stimulus& s, std::uint32_t net) {
    const std::vector<double> times =
        s.times ? *s.times : generate_stimulus_times(s.mu, s.sigma, s.n_transitions, s.seed);
    bool v = value_[net];
    for (double t : times) {
      v = !v;
      push(t, net, v, -1);
    }
  }

  void commit(const QueuedEvent& ev) {
    if (++stats_.events_processed > opts_.max_events)
      throw LivelockError("simulation exceeded " + std::to_string(opts_.max_events) + " events at t=" +
                          std::to_string(ev.time) + " s");
    value_[ev.net] = ev.value;
    trace_.transitions[ev.net].push_back({ev.time, ev.value});
    const auto& fo = fanout_[ev.net];
    for (std::size_t i = 0; i < fo.size();) {
      const std::uint32_t gi = fo[i].gate;
      GateRt& g = gates_[gi];
      for (; i < fo.size() && fo[i].gate == gi; ++i) {
        const int p = fo[i].pin;
        g.in[p] = ev.value;
        (ev.value ? g.t_rise[p] : g.t_fall[p]) = ev.time;
      }
      if (g.kind == ElementKind::nor2)
        evaluate_nor(gi, g, ev.time);
      else
        evaluate_cgate(gi, g, ev.time);
    }
  }

  void cancel(GateRt& g) {
    if (!g.has_pending) return;
    g.has_pending = false;
    ++stats_.events_canceled;
  }

  void schedule(std::uint32_t gi, GateRt& g, double fire, bool value, double now, double delta_min) {
    if (std::isnan(fire)) throw CausalityError("gate output time is undefined");
    if (fire < now + delta_min - kCausalitySlack) {
      // A clamped recomputation can land before now + delta_min; the pending edge already
      // carries that time.
      if (g.has_pending) return;
      throw CausalityError("output event at t=" + std::to_string(fire) + " s precedes input event at t=" +
                           std::to_string(now) + " s plus the pure delay");
    }
    if (g.has_pending) {
      if (g.pend_time == fire) return;
      ++stats_.events_canceled;
    }
    g.has_pending = true;
    g.pend_value = value;
    g.pend_time = fire;
    g.pend_seq = next_seq_;
    push(fire, g.out_net, value, static_cast<std::int32_t>(gi));
    ++stats_.events_scheduled;
  }

  void evaluate_nor(std::uint32_t gi, GateRt& g, double now) {
    const bool target = !(g.in[0] || g.in[1]);
    if (target == g.out) {
      cancel(g);
      return;
    }
    const NorDelayModel& m = nor_models_[g.model];
    double delta, ref;
    if (!target) {
      if (g.in[0] && g.in[1]) {
        delta = g.t_rise[1] - g.t_rise[0];
        ref = std::min(g.t_rise[0], g.t_rise[1]);
      } else if (g.in[0]) {
        delta = kInf;
        ref = g.t_rise[0];
      } else {
        delta = -kInf;
        ref = g.t_rise[1];
      }
      schedule(gi, g, ref + m.delay(Direction::falling, delta), false, now, m.params().delta_min);
      return;
    }
    delta = g.t_fall[1] - g.t_fall[0];
    ref = std::max(g.t_fall[0], g.t_fall[1]);
    if (std::isnan(delta)) throw CausalityError("NOR inputs have no falling edge to reference");
    schedule(gi, g, ref + m.delay(Direction::rising, delta), true, now, m.params().delta_min);
  }

  void evaluate_cgate(std::uint32_t gi, GateRt& g, double now) {
    if (g.in[0] != g.in[1]) {
      cancel(g);  // keeper holds the output
      return;
    }
    const CGateDelayModel& m = c_models_[g.model];
    const bool target = m.params().inverted ? !g.in[0] : g.in[0];
    if (target == g.out) {
      cancel(g);
      return;
    }
    const Direction dir = g.in[0] ? Direction::rising : Direction::falling;
    const double* t = g.in[0] ? g.t_rise : g.t_fall;
    const double delta = t[1] - t[0];
    if (std::isnan(delta)) throw CausalityError("C-gate inputs have no edge to reference");
    const double ref = std::max(t[0], t[1]);
    schedule(gi, g, ref + m.delay_for_inputs(dir, delta), target, now, m.params().delta_min);
  }

  SimOptions opts_;
  SimTrace trace_;
  std::vector<bool> value_;
  std::vector<std::vector<Pin>> fanout_;
  std::vector<GateRt> gates_;
  std::vector<NorDelayModel> nor_models_;
  std::vector<CGateDelayModel> c_models_;
  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, std::greater<>> queue_;
  std::uint64_t next_seq_ = 0;
  SimStats stats_;
};

}  // namespace

SimResult run(const Netlist& netlist, const SimOptions& opts) { return Engine(netlist, opts).run(); }

}  // namespace misdta
