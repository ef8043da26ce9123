#pragma once

#include <string>
#include <string_view>

#include "misdta/sim/netlist.hpp"
#include "misdta/sim/simulator.hpp"

namespace misdta {

/// Netlist documents: {"param_sets": {name: params}, "nets": [{name, init}],
/// "gates": [{id, kind, a, b, out, params} | {id, kind: "input_source", out, stimulus}]}.
/// A stimulus is {mu_s, sigma_s, n_transitions, seed} or {times_s: [...]}.
Netlist parse_netlist(std::string_view text, bool strict = true);
std::string serialize_netlist(const Netlist& nl);

/// Deterministic statistics report (no wall-clock time).
std::string serialize_stats(const SimTrace& trace, const SimStats& stats);

}  // namespace misdta
