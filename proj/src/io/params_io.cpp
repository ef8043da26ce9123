#include "misdta/io/params_io.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "misdta/errors.hpp"

namespace misdta {
namespace {

using nlohmann::json;

struct Field {
  const char* key;
  double* target;
};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw SchemaError(join(path, k), "unknown field");
}

double read_number(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key), "missing required field");
  if (!it->is_number()) throw SchemaError(join(path, key), "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw SchemaError(join(path, key), "expected a finite number");
  return v;
}

void read_fields(const json& j, std::initializer_list<Field> fields, const std::string& path) {
  for (const auto& f : fields) *f.target = read_number(j, f.key, path);
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

ParamsDocument params_from_json(const json& j, bool strict, const std::string& path) {
  require_object(j, path);
  auto kind_it = j.find("kind");
  if (kind_it == j.end()) throw SchemaError(join(path, "kind"), "missing required field");
  if (!kind_it->is_string()) throw SchemaError(join(path, "kind"), "expected \"nor2\" or \"cgate\"");
  const std::string kind = kind_it->get<std::string>();

  ParamsDocument doc;
  if (auto m = j.find("metadata"); m != j.end()) {
    if (!m->is_object()) throw SchemaError(join(path, "metadata"), "expected a JSON object");
    doc.metadata = *m;
  }

  try {
    if (kind == "nor2") {
      if (strict)
        reject_unknown(j, {"kind", "metadata", "r_n_a_ohm", "r_n_b_ohm", "r_ohm", "alpha1_ohm_s", "alpha2_ohm_s",
                           "c_load_f", "r5_ohm", "delta_min_s"},
                       path);
      NorGateParams p;
      read_fields(j,
                  {{"r_n_a_ohm", &p.r_n_a},
                   {"r_n_b_ohm", &p.r_n_b},
                   {"r_ohm", &p.r},
                   {"alpha1_ohm_s", &p.alpha1},
                   {"alpha2_ohm_s", &p.alpha2},
                   {"c_load_f", &p.c_load},
                   {"r5_ohm", &p.r5},
                   {"delta_min_s", &p.delta_min}},
                  path);
      p.validate();
      doc.params = p;
    } else if (kind == "cgate") {
      if (strict)
        reject_unknown(j, {"kind", "metadata", "r_n_ohm", "r_p_ohm", "alpha1_ohm_s", "alpha2_ohm_s", "alpha3_ohm_s",
                           "alpha4_ohm_s", "c_load_f", "r5_ohm", "delta_min_s", "inverted"},
                       path);
      CGateParams p;
      read_fields(j,
                  {{"r_n_ohm", &p.r_n},
                   {"r_p_ohm", &p.r_p},
                   {"alpha1_ohm_s", &p.alpha1},
                   {"alpha2_ohm_s", &p.alpha2},
                   {"alpha3_ohm_s", &p.alpha3},
                   {"alpha4_ohm_s", &p.alpha4},
                   {"c_load_f", &p.c_load},
                   {"r5_ohm", &p.r5},
                   {"delta_min_s", &p.delta_min}},
                  path);
      if (auto inv = j.find("inverted"); inv != j.end()) {
        if (!inv->is_boolean()) throw SchemaError(join(path, "inverted"), "expected a boolean");
        p.inverted = inv->get<bool>();
      }
      p.validate();
      doc.params = p;
    } else {
      throw SchemaError(join(path, "kind"), "expected \"nor2\" or \"cgate\", got \"" + kind + "\"");
    }
  } catch (const ParameterError& e) {
    throw ValidationError((path.empty() ? std::string() : path + ": ") + "parameter constraint violated: " + e.what());
  }
  return doc;
}

ParamsDocument parse_params_document(std::string_view text, bool strict) {
  return params_from_json(parse_json(text), strict);
}

GateParams parse_params(std::string_view text, bool strict) { return parse_params_document(text, strict).params; }

json params_to_json(const GateParams& gp, const json& metadata) {
  json j;
  if (const auto* p = std::get_if<NorGateParams>(&gp)) {
    j["kind"] = "nor2";
    j["r_n_a_ohm"] = p->r_n_a;
    j["r_n_b_ohm"] = p->r_n_b;
    j["r_ohm"] = p->r;
    j["alpha1_ohm_s"] = p->alpha1;
    j["alpha2_ohm_s"] = p->alpha2;
    j["c_load_f"] = p->c_load;
    j["r5_ohm"] = p->r5;
    j["delta_min_s"] = p->delta_min;
  } else {
    const auto& c = std::get<CGateParams>(gp);
    j["kind"] = "cgate";
    j["r_n_ohm"] = c.r_n;
    j["r_p_ohm"] = c.r_p;
    j["alpha1_ohm_s"] = c.alpha1;
    j["alpha2_ohm_s"] = c.alpha2;
    j["alpha3_ohm_s"] = c.alpha3;
    j["alpha4_ohm_s"] = c.alpha4;
    j["c_load_f"] = c.c_load;
    j["r5_ohm"] = c.r5;
    j["delta_min_s"] = c.delta_min;
    j["inverted"] = c.inverted;
  }
  if (metadata.is_object() && !metadata.empty()) j["metadata"] = metadata;
  return j;
}

std::string serialize_params(const GateParams& p, const json& metadata) {
  return params_to_json(p, metadata).dump(2) + "\n";
}

MeasuredDelays parse_measured(std::string_view text, bool strict) {
  const json j = parse_json(text);
  require_object(j, "");
  if (strict)
    reject_unknown(j, {"d_down_minus_inf_s", "d_down_zero_s", "d_down_inf_s", "d_up_minus_inf_s", "d_up_zero_s",
                       "d_up_inf_s", "delta_min_s", "c_chosen_f", "metadata"},
                   "");
  MeasuredDelays m;
  read_fields(j,
              {{"d_down_minus_inf_s", &m.d_down_minus_inf},
               {"d_down_zero_s", &m.d_down_zero},
               {"d_down_inf_s", &m.d_down_inf},
               {"d_up_minus_inf_s", &m.d_up_minus_inf},
               {"d_up_zero_s", &m.d_up_zero},
               {"d_up_inf_s", &m.d_up_inf}},
              "");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  m.delta_min = j.contains("delta_min_s") ? read_number(j, "delta_min_s", "") : nan;
  m.c_chosen = j.contains("c_chosen_f") ? read_number(j, "c_chosen_f", "") : nan;
  return m;
}

std::string serialize_measured(const MeasuredDelays& m) {
  json j;
  j["d_down_minus_inf_s"] = m.d_down_minus_inf;
  j["d_down_zero_s"] = m.d_down_zero;
  j["d_down_inf_s"] = m.d_down_inf;
  j["d_up_minus_inf_s"] = m.d_up_minus_inf;
  j["d_up_zero_s"] = m.d_up_zero;
  j["d_up_inf_s"] = m.d_up_inf;
  if (std::isfinite(m.delta_min)) j["delta_min_s"] = m.delta_min;
  if (std::isfinite(m.c_chosen)) j["c_chosen_f"] = m.c_chosen;
  return j.dump(2) + "\n";
}

}  // namespace misdta
