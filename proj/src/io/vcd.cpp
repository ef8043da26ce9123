#include "misdta/io/vcd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <tuple>

namespace misdta {
namespace {

std::string sanitize(const std::string& name) {
  std::string s = name.empty() ? "_" : name;
  for (char& ch : s)
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '$') ch = '_';
  return s;
}

}  // namespace

std::string vcd_identifier(std::size_t index) {
  std::string id;
  do {
    id.push_back(static_cast<char>(33 + index % 94));
    index /= 94;
  } while (index-- > 0);
  return id;
}

std::string write_vcd(const SimTrace& trace, const std::string& module) {
  std::string s;
  s += "$version misdta $end\n";
  s += "$timescale 1fs $end\n";
  s += "$scope module " + sanitize(module) + " $end\n";
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < trace.net_names.size(); ++i) {
    ids.push_back(vcd_identifier(i));
    s += "$var wire 1 " + ids.back() + " " + sanitize(trace.net_names[i]) + " $end\n";
  }
  s += "$upscope $end\n$enddefinitions $end\n";
  s += "#0\n$dumpvars\n";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (trace.initial[i] ? "1" : "0") + ids[i] + "\n";
  s += "$end\n";

  // (time_fs, order within the net's history, net)
  std::vector<std::tuple<long long, std::size_t, std::size_t>> changes;
  for (std::size_t n = 0; n < trace.transitions.size(); ++n)
    for (std::size_t k = 0; k < trace.transitions[n].size(); ++k)
      changes.emplace_back(std::llround(trace.transitions[n][k].time * 1e15), k, n);
  std::stable_sort(changes.begin(), changes.end(), [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });

  long long current = 0;
  bool first = true;
  for (const auto& [t, k, n] : changes) {
    if (first || t != current) {
      if (!(t == 0 && first)) s += "#" + std::to_string(t) + "\n";
      current = t;
      first = false;
    }
    s += (trace.transitions[n][k].value ? "1" : "0") + ids[n] + "\n";
  }
  return s;
}

}  // namespace misdta
