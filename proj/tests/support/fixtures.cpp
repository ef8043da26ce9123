#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "misdta/io/file_util.hpp"
#include "misdta/io/params_io.hpp"

namespace testutil {

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(misdta::fixture_dir()))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

misdta::GateParams load_fixture(const std::string& name) {
  return misdta::parse_params(misdta::read_file(misdta::fixture_dir() / (name + ".json")));
}

misdta::NorGateParams load_nor(const std::string& name) { return std::get<misdta::NorGateParams>(load_fixture(name)); }

misdta::CGateParams load_cgate(const std::string& name) { return std::get<misdta::CGateParams>(load_fixture(name)); }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

misdta::NorGateParams random_nor(std::mt19937_64& rng) {
  misdta::NorGateParams p;
  p.r_n_a = log_uniform(rng, 500, 10e3);
  p.r_n_b = log_uniform(rng, 500, 10e3);
  p.r = log_uniform(rng, 300, 5e3);
  p.alpha1 = log_uniform(rng, 1e-10, 5e-9);
  p.alpha2 = log_uniform(rng, 1e-10, 5e-9);
  p.c_load = log_uniform(rng, 0.3e-15, 10e-15);
  p.r5 = std::uniform_real_distribution<double>(0.0, 3e3)(rng);
  p.delta_min = std::uniform_real_distribution<double>(0.0, 10e-12)(rng);
  return p;
}

misdta::CGateParams random_cgate(std::mt19937_64& rng) {
  misdta::CGateParams p;
  p.r_n = log_uniform(rng, 500, 5e3);
  p.r_p = log_uniform(rng, 500, 5e3);
  p.alpha1 = log_uniform(rng, 1e-10, 5e-9);
  p.alpha2 = log_uniform(rng, 1e-10, 5e-9);
  p.alpha3 = log_uniform(rng, 1e-10, 5e-9);
  p.alpha4 = log_uniform(rng, 1e-10, 5e-9);
  p.c_load = log_uniform(rng, 0.3e-15, 10e-15);
  p.r5 = std::uniform_real_distribution<double>(0.0, 3e3)(rng);
  p.delta_min = std::uniform_real_distribution<double>(0.0, 10e-12)(rng);
  return p;
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

}  // namespace testutil
