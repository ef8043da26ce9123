#include "misdta/sim/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

#include "misdta/errors.hpp"

namespace misdta {

const char* to_string(ElementKind k) noexcept {
  switch (k) {
    case ElementKind::nor2:
      return "nor2";
    case ElementKind::cgate:
      return "cgate";
    case ElementKind::input_source:
      return "input_source";
  }
  return "?";
}

std::size_t Netlist::logic_gate_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const GateInstance& g) { return g.kind != ElementKind::input_source; }));
}

void Netlist::validate() const {
  std::unordered_map<std::string, bool> init;
  for (const auto& n : nets) {
    if (n.name.empty()) throw ValidationError("netlist: empty net name");
    if (!init.emplace(n.name, n.init).second) throw ValidationError("netlist: duplicate net '" + n.name + "'");
  }
  for (const auto& [name, ps] : param_sets) {
    try {
      std::visit([](const auto& p) { p.validate(); }, ps);
    } catch (const ParameterError& e) {
      throw ValidationError("netlist: param set '" + name + "': " + e.what());
    }
  }

  std::set<std::string> ids;
  std::unordered_map<std::string, std::string> driver;
  auto net_exists = [&](const std::string& n, const GateInstance& g, const char* pin) {
    if (!init.count(n)) throw ValidationError("netlist: gate '" + g.id + "' pin " + pin + " references unknown net '" + n + "'");
  };
  for (const auto& g : gates) {
    if (g.id.empty()) throw ValidationError("netlist: gate with empty id");
    if (!ids.insert(g.id).second) throw ValidationError("netlist: duplicate gate id '" + g.id + "'");
    net_exists(g.out, g, "out");
    if (auto [it, fresh] = driver.emplace(g.out, g.id); !fresh)
      throw ValidationError("netlist: net '" + g.out + "' driven by both '" + it->second + "' and '" + g.id + "'");

    if (g.kind == ElementKind::input_source) {
      if (!g.stimulus) throw ValidationError("netlist: source '" + g.id + "' has no stimulus");
      const Stimulus& s = *g.stimulus;
      if (s.times) {
        double prev = 0.0;
        for (double t : *s.times) {
          if (!std::isfinite(t) || t < prev)
            throw ValidationError("netlist: source '" + g.id + "' times must be finite, >= 0 and non-decreasing");
          prev = t;
        }
      } else if (!(s.mu > 0.0) || !(s.sigma >= 0.0) || !std::isfinite(s.mu + s.sigma)) {
        throw ValidationError("netlist: source '" + g.id + "' needs mu > 0 and sigma >= 0");
      }
      continue;
    }

    net_exists(g.a, g, "a");
    net_exists(g.b, g, "b");
    auto ps = param_sets.find(g.params);
    if (ps == param_sets.end()) throw ValidationError("netlist: gate '" + g.id + "' references unknown params '" + g.params + "'");
    const bool want_nor = g.kind == ElementKind::nor2;
    if (want_nor != std::holds_alternative<NorGateParams>(ps->second))
      throw ValidationError("netlist: gate '" + g.id + "' kind does not match params '" + g.params + "'");

    const bool a = init[g.a], b = init[g.b], out = init[g.out];
    if (want_nor) {
      if (out != !(a || b)) throw ValidationError("netlist: initial value of '" + g.out + "' is not the NOR steady state");
    } else if (a == b) {
      const bool inv = std::get<CGateParams>(ps->second).inverted;
      if (out != (inv ? !a : a))
        throw ValidationError("netlist: initial value of '" + g.out + "' is not the C-gate steady state");
    }
  }
  for (const auto& n : nets)
    if (!driver.count(n.name)) throw ValidationError("netlist: net '" + n.name + "' has no driver");
}

Netlist build_cross_coupled_chain(std::size_t n_stages, const NorGateParams& params, const Stimulus& stim_i1,
                                  const Stimulus& stim_i2) {
  if (n_stages < 1) throw ValidationError("chain: need at least one stage");
  Netlist nl;
  nl.param_sets.emplace("nor", params);
  nl.nets.push_back({"I1", false});
  nl.nets.push_back({"I2", false});
  nl.gates.push_back({"src_I1", ElementKind::input_source, "", "", "I1", "", stim_i1});
  nl.gates.push_back({"src_I2", ElementKind::input_source, "", "", "I2", "", stim_i2});
  std::string up_prev = "I1", lo_prev = "I2";
  bool value = true;  // NOR of two lows
  for (std::size_t i = 1; i <= n_stages; ++i) {
    const std::string u = "U" + std::to_string(i), l = "L" + std::to_string(i);
    nl.nets.push_back({u, value});
    nl.nets.push_back({l, value});
    nl.gates.push_back({"g" + u, ElementKind::nor2, up_prev, lo_prev, u, "nor", std::nullopt});
    nl.gates.push_back({"g" + l, ElementKind::nor2, lo_prev, up_prev, l, "nor", std::nullopt});
    up_prev = u;
    lo_prev = l;
    value = !value;
  }
  return nl;
}

}  // namespace misdta
