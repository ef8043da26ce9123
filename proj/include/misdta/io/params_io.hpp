#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "misdta/characterization.hpp"
#include "misdta/sim/netlist.hpp"

namespace misdta {

/// A parameter document: the gate parameters plus free-form metadata (label, provenance, ...).
struct ParamsDocument {
  GateParams params;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Parses a params document ({"kind": "nor2"|"cgate", ..._ohm, ..._ohm_s, ..._f, ..._s}).
/// In strict mode unknown fields are rejected.
/// @throws SchemaError naming the offending field; ValidationError for invariant violations.
ParamsDocument parse_params_document(std::string_view text, bool strict = true);
GateParams parse_params(std::string_view text, bool strict = true);

/// `path` prefixes field names in error messages (e.g. "param_sets.nor").
ParamsDocument params_from_json(const nlohmann::json& j, bool strict = true, const std::string& path = "");
nlohmann::json params_to_json(const GateParams& p, const nlohmann::json& metadata = nlohmann::json::object());

std::string serialize_params(const GateParams& p, const nlohmann::json& metadata = nlohmann::json::object());

/// Measured-delay documents: d_{down,up}_{minus_inf,zero,inf}_s plus optional delta_min_s, c_chosen_f.
/// Missing optional values are returned as NaN.
MeasuredDelays parse_measured(std::string_view text, bool strict = true);
std::string serialize_measured(const MeasuredDelays& m);

nlohmann::json parse_json(std::string_view text);

}  // namespace misdta
