#include "misdta/io/netlist_io.hpp"

#include <cmath>
#include <set>

#include "misdta/errors.hpp"
#include "misdta/io/params_io.hpp"

namespace misdta {
namespace {

using nlohmann::json;

std::string read_string(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing required field");
  if (!it->is_string()) throw SchemaError(path + "." + key, "expected a string");
  return it->get<std::string>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw SchemaError(path + "." + k, "unknown field");
}

bool read_init(const json& j, const std::string& path) {
  auto it = j.find("init");
  if (it == j.end()) return false;
  if (it->is_boolean()) return it->get<bool>();
  if (it->is_number_integer() && (it->get<long long>() == 0 || it->get<long long>() == 1)) return it->get<long long>() == 1;
  throw SchemaError(path + ".init", "expected 0, 1, true or false");
}

Stimulus read_stimulus(const json& j, bool strict, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a JSON object");
  if (strict) reject_unknown(j, {"mu_s", "sigma_s", "n_transitions", "seed", "times_s"}, path);
  Stimulus s;
  if (auto t = j.find("times_s"); t != j.end()) {
    if (!t->is_array()) throw SchemaError(path + ".times_s", "expected an array of numbers");
    std::vector<double> times;
    for (const auto& x : *t) {
      if (!x.is_number()) throw SchemaError(path + ".times_s", "expected an array of numbers");
      times.push_back(x.get<double>());
    }
    s.times = std::move(times);
    return s;
  }
  auto num = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing required field");
    if (!it->is_number()) throw SchemaError(path + "." + key, "expected a number");
    return *it;
  };
  s.mu = num("mu_s").get<double>();
  s.sigma = num("sigma_s").get<double>();
  const json n = num("n_transitions");
  if (!n.is_number_unsigned()) throw SchemaError(path + ".n_transitions", "expected a non-negative integer");
  s.n_transitions = n.get<std::uint64_t>();
  const json seed = num("seed");
  if (!seed.is_number_unsigned()) throw SchemaError(path + ".seed", "expected a non-negative integer");
  s.seed = seed.get<std::uint64_t>();
  return s;
}

}  // namespace

Netlist parse_netlist(std::string_view text, bool strict) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  if (strict) reject_unknown(j, {"param_sets", "nets", "gates", "metadata"}, "");
  Netlist nl;
  if (auto ps = j.find("param_sets"); ps != j.end()) {
    if (!ps->is_object()) throw SchemaError("param_sets", "expected a JSON object");
    for (const auto& [name, v] : ps->items()) nl.param_sets.emplace(name, params_from_json(v, strict, "param_sets." + name).params);
  }
  auto nets = j.find("nets");
  if (nets == j.end() || !nets->is_array()) throw SchemaError("nets", "expected an array");
  for (std::size_t i = 0; i < nets->size(); ++i) {
    const json& n = (*nets)[i];
    const std::string path = "nets[" + std::to_string(i) + "]";
    if (!n.is_object()) throw SchemaError(path, "expected a JSON object");
    if (strict) reject_unknown(n, {"name", "init"}, path);
    nl.nets.push_back({read_string(n, "name", path), read_init(n, path)});
  }
  auto gates = j.find("gates");
  if (gates == j.end() || !gates->is_array()) throw SchemaError("gates", "expected an array");
  for (std::size_t i = 0; i < gates->size(); ++i) {
    const json& g = (*gates)[i];
    const std::string path = "gates[" + std::to_string(i) + "]";
    if (!g.is_object()) throw SchemaError(path, "expected a JSON object");
    GateInstance gi;
    gi.id = read_string(g, "id", path);
    const std::string kind = read_string(g, "kind", path);
    gi.out = read_string(g, "out", path);
    if (kind == "input_source") {
      if (strict) reject_unknown(g, {"id", "kind", "out", "stimulus"}, path);
      gi.kind = ElementKind::input_source;
      auto st = g.find("stimulus");
      if (st == g.end()) throw SchemaError(path + ".stimulus", "missing required field");
      gi.stimulus = read_stimulus(*st, strict, path + ".stimulus");
    } else if (kind == "nor2" || kind == "cgate") {
      if (strict) reject_unknown(g, {"id", "kind", "a", "b", "out", "params"}, path);
      gi.kind = kind == "nor2" ? ElementKind::nor2 : ElementKind::cgate;
      gi.a = read_string(g, "a", path);
      gi.b = read_string(g, "b", path);
      gi.params = read_string(g, "params", path);
    } else {
      throw SchemaError(path + ".kind", "expected nor2, cgate or input_source");
    }
    nl.gates.push_back(std::move(gi));
  }
  nl.validate();
  return nl;
}

std::string serialize_netlist(const Netlist& nl) {
  json j;
  j["param_sets"] = json::object();
  for (const auto& [name, p] : nl.param_sets) j["param_sets"][name] = params_to_json(p);
  j["nets"] = json::array();
  for (const auto& n : nl.nets) j["nets"].push_back({{"name", n.name}, {"init", n.init ? 1 : 0}});
  j["gates"] = json::array();
  for (const auto& g : nl.gates) {
    json e{{"id", g.id}, {"kind", to_string(g.kind)}, {"out", g.out}};
    if (g.kind == ElementKind::input_source) {
      json s;
      if (g.stimulus && g.stimulus->times) {
        s["times_s"] = *g.stimulus->times;
      } else if (g.stimulus) {
        s = {{"mu_s", g.stimulus->mu},
             {"sigma_s", g.stimulus->sigma},
             {"n_transitions", g.stimulus->n_transitions},
             {"seed", g.stimulus->seed}};
      }
      e["stimulus"] = s;
    } else {
      e["a"] = g.a;
      e["b"] = g.b;
      e["params"] = g.params;
    }
    j["gates"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string serialize_stats(const SimTrace& trace, const SimStats& stats) {
  json j;
  j["events_processed"] = stats.events_processed;
  j["events_scheduled"] = stats.events_scheduled;
  j["events_canceled"] = stats.events_canceled;
  json per_net = json::array();
  double last = 0.0;
  for (std::size_t i = 0; i < trace.net_names.size(); ++i) {
    per_net.push_back({{"net", trace.net_names[i]}, {"transitions", stats.transitions_per_net.at(i)}});
    if (!trace.transitions[i].empty()) last = std::max(last, trace.transitions[i].back().time);
  }
  j["transitions_per_net"] = per_net;
  j["last_transition_s"] = last;
  return j.dump(2) + "\n";
}

}  // namespace misdta
