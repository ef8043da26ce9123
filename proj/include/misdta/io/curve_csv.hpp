#pragma once

#include <string>
#include <vector>

#include "misdta/sim/netlist.hpp"

namespace misdta {

enum class CurveOracle { none, trajectory, ode };

struct CurvePoint {
  double delta;
  double delay;
  std::string family;  // down_plus | down_minus | up_plus | up_minus
  std::string source;  // closed_form | trajectory_oracle | ode_oracle
};

/// Delay curves of all four families over `steps` equal intervals of [dmin, dmax]; each family
/// takes the grid points of its sign of delta. Oracle rows follow the closed-form rows.
std::vector<CurvePoint> compute_delay_curves(const GateParams& p, double dmin, double dmax, int steps,
                                             CurveOracle oracle = CurveOracle::none);

/// CSV with header delta_s,delay_s,family,source; numbers in shortest round-trip form.
std::string write_curve_csv(const std::vector<CurvePoint>& pts);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace misdta
