#pragma once

#include <random>
#include <string>
#include <vector>

#include "misdta/gate_models.hpp"
#include "misdta/sim/netlist.hpp"

namespace testutil {

std::vector<std::string> fixture_names();  // sorted file stems
misdta::GateParams load_fixture(const std::string& name);
misdta::NorGateParams load_nor(const std::string& name);
misdta::CGateParams load_cgate(const std::string& name);

/// Log-uniform random parameter sets in a physically plausible 15-65 nm range.
misdta::NorGateParams random_nor(std::mt19937_64& rng);
misdta::CGateParams random_cgate(std::mt19937_64& rng);

double log_uniform(std::mt19937_64& rng, double lo, double hi);
double rel_diff(double a, double b);

}  // namespace testutil
