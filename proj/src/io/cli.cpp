#include "misdta/io/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "misdta/characterization.hpp"
#include "misdta/errors.hpp"
#include "misdta/io/curve_csv.hpp"
#include "misdta/io/file_util.hpp"
#include "misdta/io/netlist_io.hpp"
#include "misdta/io/params_io.hpp"
#include "misdta/io/vcd.hpp"
#include "misdta/sim/simulator.hpp"
#include "misdta/trajectories.hpp"

namespace misdta {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kInf = std::numeric_limits<double>::infinity();

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_file_atomic(path, content);
}

// Accepts a path or the name of a bundled fixture.
fs::path resolve_params_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  fs::path candidate = fixture_dir() / arg;
  if (candidate.extension() != ".json") candidate += ".json";
  if (fs::exists(candidate)) return candidate;
  throw ValidationError("params file '" + arg + "' not found");
}

// ---------------------------------------------------------------------------------------------

struct CharacterizeArgs {
  std::string gate, measured, output;
  std::optional<double> c, delta_min, r5;
};

int cmd_characterize(const CharacterizeArgs& a, std::ostream& out) {
  MeasuredDelays m = parse_measured(read_file(a.measured));
  if (a.c) m.c_chosen = *a.c;
  if (a.delta_min) m.delta_min = *a.delta_min;
  if (std::isnan(m.c_chosen)) throw SchemaError("c_chosen_f", "no load capacitance given (file field or --c)");
  if (std::isnan(m.delta_min)) throw SchemaError("delta_min_s", "no pure delay given (file field or --delta-min)");
  json meta{{"generated_by", "characterize"}, {"measured", fs::path(a.measured).filename().string()}};
  GateParams p;
  if (a.gate == "nor2") {
    if (a.r5) throw ValidationError("--r5 applies to C gates only");
    p = characterize_nor(m);
  } else {
    p = characterize_cgate(m, a.r5);
  }
  emit(a.output, serialize_params(p, meta), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------

struct CurveArgs {
  std::string params, output, oracle = "none";
  double dmin = -50e-12, dmax = 50e-12;
  int steps = 200;
};

int cmd_delay_curve(const CurveArgs& a, std::ostream& out) {
  const GateParams p = parse_params(read_file(resolve_params_path(a.params)));
  const CurveOracle o = a.oracle == "trajectory" ? CurveOracle::trajectory
                        : a.oracle == "ode"      ? CurveOracle::ode
                                                 : CurveOracle::none;
  emit(a.output, write_curve_csv(compute_delay_curves(p, a.dmin, a.dmax, a.steps, o)), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> params;
  std::string output;
  double tol_exact = 1e-12;
  double tol_linearized = 0.05;
  double tol_ode = 0.10;
  int grid = 50;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

std::vector<double> ode_grid(double bp_neg, double bp_pos) {
  return {-kInf, -bp_neg, -0.5 * bp_neg, -0.125 * bp_neg, 0.0, 0.125 * bp_pos, 0.5 * bp_pos, bp_pos, kInf};
}

struct FamilyCheck {
  double max_abs = 0.0;
  double max_rel = 0.0;
  void add(double model, double oracle) {
    const double d = std::fabs(model - oracle);
    max_abs = std::max(max_abs, d);
    max_rel = std::max(max_rel, d / std::fabs(oracle));
  }
};

json verify_one(const GateParams& gp, const VerifyArgs& a, bool& pass) {
  json r;
  FamilyCheck exact, lin, ode;
  if (const auto* p = std::get_if<NorGateParams>(&gp)) {
    const NorDelayModel m(*p);
    const auto& bp = m.breakpoints();
    for (double d : linspace(-1.5 * bp.fall_neg, 1.5 * bp.fall_pos, a.grid))
      exact.add(m.delay(Direction::falling, d), delay_by_inversion(*p, {Direction::falling, d}));
    for (double d : linspace(-1.5 * bp.rise_neg, 1.5 * bp.rise_pos, a.grid))
      lin.add(m.delay(Direction::rising, d), delay_by_inversion(*p, {Direction::rising, d}));
    for (double d : ode_grid(bp.rise_neg, bp.rise_pos))
      ode.add(delay_by_inversion(*p, {Direction::rising, d}), delay_by_ode(*p, {Direction::rising, d}));
    for (double d : ode_grid(bp.fall_neg, bp.fall_pos))
      ode.add(delay_by_inversion(*p, {Direction::falling, d}), delay_by_ode(*p, {Direction::falling, d}));
    r["kind"] = "nor2";
    r["exact_max_abs_s"] = exact.max_abs;
    pass = exact.max_abs <= a.tol_exact;
  } else {
    const auto& c = std::get<CGateParams>(gp);
    const CGateDelayModel m(c);
    for (Direction in : {Direction::rising, Direction::falling}) {
      const Direction od = c.inverted ? opposite(in) : in;
      const auto& bp = m.breakpoints(in);
      for (double d : linspace(-1.5 * bp.neg, 1.5 * bp.pos, a.grid))
        lin.add(m.delay_for_inputs(in, d), delay_by_inversion(c, {od, d}));
      for (double d : ode_grid(bp.neg, bp.pos)) ode.add(delay_by_inversion(c, {od, d}), delay_by_ode(c, {od, d}));
    }
    r["kind"] = "cgate";
    pass = true;
  }
  r["linearized_max_rel"] = lin.max_rel;
  r["linearized_max_abs_s"] = lin.max_abs;
  r["ode_max_rel"] = ode.max_rel;
  pass = pass && lin.max_rel <= a.tol_linearized && ode.max_rel <= a.tol_ode;
  r["pass"] = pass;
  return r;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.grid < 2) throw ValidationError("--grid must be >= 2");
  std::vector<fs::path> files;
  if (a.params.empty()) {
    for (const auto& e : fs::directory_iterator(fixture_dir()))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("no fixtures found in '" + fixture_dir().string() + "'");
  } else {
    for (const auto& p : a.params) files.push_back(resolve_params_path(p));
  }
  json report{{"tolerances", {{"exact_s", a.tol_exact}, {"linearized_rel", a.tol_linearized}, {"ode_rel", a.tol_ode}}},
              {"results", json::array()}};
  bool all = true;
  for (const auto& f : files) {
    bool pass = false;
    json r = verify_one(parse_params(read_file(f)), a, pass);
    r["params"] = f.filename().string();
    if (!pass) err << "verify: " << f.filename().string() << " exceeds tolerance\n";
    all = all && pass;
    report["results"].push_back(std::move(r));
  }
  report["pass"] = all;
  emit(a.output, report.dump(2) + "\n", out);
  return all ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------------------------

struct SimulateArgs {
  std::string netlist, vcd, stats;
  double t_end = kInf;
  std::uint64_t max_events = 100'000'000;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Netlist nl = parse_netlist(read_file(a.netlist));
  const SimResult r = run(nl, SimOptions{a.t_end, a.max_events});
  const std::string vcd = write_vcd(r.trace);
  const std::string stats = serialize_stats(r.trace, r.stats);
  emit(a.vcd, vcd, out);
  if (!a.stats.empty()) emit(a.stats, stats, out);
  err << "simulate: " << r.stats.events_processed << " events in " << r.stats.wall_clock_s << " s wall clock\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------

struct BenchArgs {
  std::size_t stages = 50;
  std::uint64_t transitions = 1000;
  double mu = 50e-12, sigma = 30e-12;
  std::uint64_t seed = 1;
  int repeat = 3;
  std::string params = "nor_15nm_l3um";
  std::string output;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.repeat < 1) throw ValidationError("--repeat must be >= 1");
  const GateParams gp = parse_params(read_file(resolve_params_path(a.params)));
  const auto* p = std::get_if<NorGateParams>(&gp);
  if (!p) throw ValidationError("bench needs NOR parameters");
  const Stimulus s1{a.mu, a.sigma, a.transitions, a.seed, std::nullopt};
  const Stimulus s2{a.mu, a.sigma, a.transitions, a.seed + 1, std::nullopt};
  const Netlist nl = build_cross_coupled_chain(a.stages, *p, s1, s2);
  json runs = json::array();
  double best = kInf;
  std::uint64_t events = 0;
  for (int i = 0; i < a.repeat; ++i) {
    const SimResult r = run(nl);
    events = r.stats.events_processed;
    best = std::min(best, r.stats.wall_clock_s);
    runs.push_back(r.stats.wall_clock_s);
  }
  json j{{"stages", a.stages}, {"transitions_per_input", a.transitions}, {"mu_s", a.mu}, {"sigma_s", a.sigma},
         {"seed", a.seed},     {"events_processed", events},          {"wall_clock_s", runs},
         {"best_wall_clock_s", best}};
  emit(a.output, j.dump(2) + "\n", out);
  return kExitOk;
}

void diagnose(std::ostream& err, const char* kind, const std::string& msg, const std::string& field = "") {
  json j{{"error", kind}, {"message", msg}};
  if (!field.empty()) j["field"] = field;
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid MIS delay models: characterization, delay curves, oracles and simulation", "misdta"};
  app.require_subcommand(1);

  CharacterizeArgs ca;
  auto* ch = app.add_subcommand("characterize", "Fit model parameters to six measured extremal delays");
  ch->add_option("--gate", ca.gate, "nor2 or cgate")->required()->check(CLI::IsMember({"nor2", "cgate"}));
  ch->add_option("--measured", ca.measured, "Measured-delays JSON")->required();
  ch->add_option("--c", ca.c, "Chosen load capacitance [F]");
  ch->add_option("--delta-min", ca.delta_min, "Pure delay [s]");
  ch->add_option("--r5", ca.r5, "Interconnect resistance for the C gate [ohm]");
  ch->add_option("-o,--output", ca.output, "Params file to write (default stdout)");

  CurveArgs cu;
  auto* dc = app.add_subcommand("delay-curve", "Tabulate the four delay families over a delta range");
  dc->add_option("--params", cu.params, "Params file or bundled fixture name")->required();
  dc->add_option("--dmin", cu.dmin, "Smallest delta [s]");
  dc->add_option("--dmax", cu.dmax, "Largest delta [s]");
  dc->add_option("--steps", cu.steps, "Number of intervals");
  dc->add_option("--oracle", cu.oracle, "Also tabulate an oracle")->check(CLI::IsMember({"none", "trajectory", "ode"}));
  dc->add_option("-o,--output", cu.output, "CSV file to write (default stdout)");

  VerifyArgs va;
  auto* ve = app.add_subcommand("verify", "Compare closed forms against the trajectory and ODE oracles");
  ve->add_option("--params", va.params, "Params files (default: all bundled fixtures)");
  ve->add_option("--tol-exact", va.tol_exact, "Absolute tolerance for the exact family [s]");
  ve->add_option("--tol-linearized", va.tol_linearized, "Relative tolerance for the linearized families");
  ve->add_option("--tol-ode", va.tol_ode, "Relative tolerance of the constant-F approximation");
  ve->add_option("--grid", va.grid, "Delta grid points per family");
  ve->add_option("-o,--output", va.output, "Report file (default stdout)");

  SimulateArgs sa;
  auto* si = app.add_subcommand("simulate", "Run the event-driven simulator on a netlist");
  si->add_option("--netlist", sa.netlist, "Netlist JSON")->required();
  si->add_option("-o,--output", sa.vcd, "VCD file to write")->required();
  si->add_option("--stats", sa.stats, "Stats JSON to write");
  si->add_option("--t-end", sa.t_end, "Stop after this simulated time [s]");
  si->add_option("--max-events", sa.max_events, "Livelock guard");

  BenchArgs ba;
  auto* be = app.add_subcommand("bench", "Time the cross-coupled NOR chain benchmark");
  be->add_option("--stages", ba.stages, "Chain stages");
  be->add_option("--transitions", ba.transitions, "Transitions per input");
  be->add_option("--mu", ba.mu, "Mean gap [s]");
  be->add_option("--sigma", ba.sigma, "Gap standard deviation [s]");
  be->add_option("--seed", ba.seed, "Seed of input I1 (I2 uses seed+1)");
  be->add_option("--repeat", ba.repeat, "Repetitions");
  be->add_option("--params", ba.params, "NOR params file or bundled fixture name");
  be->add_option("-o,--output", ba.output, "Report file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (ch->parsed()) return cmd_characterize(ca, out);
    if (dc->parsed()) return cmd_delay_curve(cu, out);
    if (ve->parsed()) return cmd_verify(va, out, err);
    if (si->parsed()) return cmd_simulate(sa, out, err);
    if (be->parsed()) return cmd_bench(ba, out);
  } catch (const SchemaError& e) {
    diagnose(err, "schema", e.what(), e.field());
    return kExitValidation;
  } catch (const ValidationError& e) {
    diagnose(err, "validation", e.what());
    return kExitValidation;
  } catch (const ParameterError& e) {
    diagnose(err, "parameter", e.what());
    return kExitValidation;
  } catch (const DomainError& e) {
    diagnose(err, "domain", e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    diagnose(err, "numerical", e.what());
    return kExitNumerical;
  } catch (const CausalityError& e) {
    diagnose(err, "causality", e.what());
    return kExitNumerical;
  } catch (const LivelockError& e) {
    diagnose(err, "livelock", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    diagnose(err, "internal", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace misdta
