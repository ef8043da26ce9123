#pragma once

#include <string>

#include "misdta/sim/simulator.hpp"

namespace misdta {

/// Value Change Dump with a 1 fs timescale; one wire per net.
std::string write_vcd(const SimTrace& trace, const std::string& module = "top");

/// Identifier code of the i-th variable (printable ASCII 33..126, base 94).
std::string vcd_identifier(std::size_t index);

}  // namespace misdta
