#include "misdta/io/curve_csv.hpp"

#include <charconv>
#include <cmath>

#include "misdta/errors.hpp"
#include "misdta/trajectories.hpp"

namespace misdta {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<CurvePoint> compute_delay_curves(const GateParams& gp, double dmin, double dmax, int steps,
                                             CurveOracle oracle) {
  if (!std::isfinite(dmin) || !std::isfinite(dmax) || !(dmin < dmax))
    throw ValidationError("delay curve: need finite dmin < dmax");
  if (steps < 1) throw ValidationError("delay curve: steps must be >= 1");
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i)
    grid.push_back(i == steps ? dmax : dmin + (dmax - dmin) * static_cast<double>(i) / steps);

  struct Family {
    const char* name;
    Direction dir;  // output direction for NOR, input-pair direction for C
    bool plus;
  };
  const Family families[] = {{"down_plus", Direction::falling, true},
                             {"down_minus", Direction::falling, false},
                             {"up_plus", Direction::rising, true},
                             {"up_minus", Direction::rising, false}};

  std::vector<CurvePoint> out;
  auto emit = [&](const char* source, auto&& eval) {
    for (const auto& f : families)
      for (double d : grid) {
        if (f.plus == (d < 0.0)) continue;
        out.push_back({d, eval(f.dir, d), f.name, source});
      }
  };

  if (const auto* p = std::get_if<NorGateParams>(&gp)) {
    const NorDelayModel m(*p);
    emit("closed_form", [&](Direction dir, double d) { return m.delay(dir, d); });
    if (oracle == CurveOracle::trajectory)
      emit("trajectory_oracle", [&](Direction dir, double d) { return delay_by_inversion(*p, {dir, d}); });
    if (oracle == CurveOracle::ode)
      emit("ode_oracle", [&](Direction dir, double d) { return delay_by_ode(*p, {dir, d}); });
  } else {
    const auto& c = std::get<CGateParams>(gp);
    const CGateDelayModel m(c);
    auto out_dir = [&](Direction in) { return c.inverted ? opposite(in) : in; };
    emit("closed_form", [&](Direction dir, double d) { return m.delay_for_inputs(dir, d); });
    if (oracle == CurveOracle::trajectory)
      emit("trajectory_oracle", [&](Direction dir, double d) { return delay_by_inversion(c, {out_dir(dir), d}); });
    if (oracle == CurveOracle::ode)
      emit("ode_oracle", [&](Direction dir, double d) { return delay_by_ode(c, {out_dir(dir), d}); });
  }
  return out;
}

std::string write_curve_csv(const std::vector<CurvePoint>& pts) {
  std::string s = "delta_s,delay_s,family,source\n";
  for (const auto& p : pts) {
    if (std::isnan(p.delta) || std::isnan(p.delay)) throw NumericalError("delay curve: NaN value");
    s += format_double(p.delta) + "," + format_double(p.delay) + "," + p.family + "," + p.source + "\n";
  }
  return s;
}

}  // namespace misdta
