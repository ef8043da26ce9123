#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "misdta/sim/netlist.hpp"

namespace misdta {

struct SimOptions {
  double t_end = std::numeric_limits<double>::infinity();
  std::uint64_t max_events = 100'000'000;  // livelock guard
};

struct Transition {
  double time;
  bool value;

  bool operator==(const Transition&) const = default;
};

struct SimTrace {
  std::vector<std::string> net_names;  // declaration order
  std::vector<bool> initial;
  std::vector<std::vector<Transition>> transitions;  // per net, time ordered
};

struct SimStats {
  std::uint64_t events_processed = 0;  // committed net transitions
  std::uint64_t events_scheduled = 0;
  std::uint64_t events_canceled = 0;
  std::vector<std::uint64_t> transitions_per_net;
  double wall_clock_s = 0.0;  // not deterministic; excluded from reports by default
};

struct SimResult {
  SimTrace trace;
  SimStats stats;
};

/// Event-driven simulation with MIS-aware delays.
///
/// NOR: a falling output is scheduled from the earlier of the inputs' latest rising edges with
/// delta = t_rise_B - t_rise_A (an input that is low counts as never rising, delta = +-inf);
/// a rising output from the later of the latest falling edges. The pending event is moved
/// whenever the other input changes. C gate: scheduled only when both inputs agree, from the
/// second edge; disagreement cancels. An input change that restores the committed output
/// cancels the pending event.
/// @throws CausalityError, LivelockError, ValidationError.
SimResult run(const Netlist& netlist, const SimOptions& opts = {});

}  // namespace misdta
