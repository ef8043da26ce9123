#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "misdta/gate_models.hpp"

namespace misdta {

enum class ElementKind { nor2, cgate, input_source };

const char* to_string(ElementKind k) noexcept;

/// Pulse train on a source: gaps ~ Normal(mu, sigma) truncated below at 1 ps,
/// or an explicit list of transition times when `times` is set.
struct Stimulus {
  double mu = 0;
  double sigma = 0;
  std::uint64_t n_transitions = 0;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> times;

  bool operator==(const Stimulus&) const = default;
};

struct GateInstance {
  std::string id;
  ElementKind kind = ElementKind::nor2;
  std::string a;       // input nets (unused for sources)
  std::string b;
  std::string out;
  std::string params;  // key into Netlist::param_sets (unused for sources)
  std::optional<Stimulus> stimulus;

  bool operator==(const GateInstance&) const = default;
};

struct NetDecl {
  std::string name;
  bool init = false;

  bool operator==(const NetDecl&) const = default;
};

using GateParams = std::variant<NorGateParams, CGateParams>;

struct Netlist {
  std::map<std::string, GateParams> param_sets;
  std::vector<NetDecl> nets;
  std::vector<GateInstance> gates;  // sources included

  /// @throws ValidationError describing the first structural problem found.
  void validate() const;
  std::size_t logic_gate_count() const;

  bool operator==(const Netlist&) const = default;
};

/// Two rails of n cross-coupled NOR gates: U_i = NOR(U_{i-1}, L_{i-1}), L_i = NOR(L_{i-1}, U_{i-1}),
/// with sources I1 (upper rail) and I2 (lower rail) feeding stage 1. Initial values are the
/// steady state for both inputs low.
Netlist build_cross_coupled_chain(std::size_t n_stages, const NorGateParams& params, const Stimulus& stim_i1,
                                  const Stimulus& stim_i2);

}  // namespace misdta
