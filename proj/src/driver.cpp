#include "landau/driver.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>

#include "landau/asymptotics.hpp"
#include "landau/errors.hpp"
#include "landau/fit.hpp"
#include "landau/io.hpp"
#include "landau/lemmas.hpp"
#include "landau/penrose.hpp"

namespace landau {

namespace fs = std::filesystem;

std::vector<Mode> axis_modes(int count, int n_x) {
  std::vector<Mode> out;
  for (int j = 1; j <= count && j < n_x / 2; ++j) out.push_back({j, 0, 0});
  return out;
}

InitialSpectrum initial_spectrum(const SimConfig& c) {
  const int j_max = c.j_max < 0 ? c.grid.d : c.j_max;
  if (c.datum == DatumKind::single_mode) return single_mode_spectrum(c.profile, c.eps, c.k0);
  if (c.datum == DatumKind::gevrey_bump && c.grid.d == 1 && j_max <= 1) {
    GevreyParams gp = c.params;
    gp.z = c.lambda1;
    const double a = c.eps == 0.0 ? 0.0 : std::sqrt(c.eps / gevrey_bump_unit_G(c.lambda1, gp, c.k0, j_max));
    return gevrey_bump_spectrum(1, a, c.lambda1, c.params.gamma, c.k0);
  }
  return spectrum_from_state(make_initial_datum(c).f0);
}

namespace {

std::string path_in(const DriverOptions& o, const std::string& name) { return (fs::path(o.out) / name).string(); }

nlohmann::json run_penrose(const RunConfig& c, const DriverOptions& o, RunManifest& m) {
  const PenroseReport r = penrose_margin(c.sim.profile, c.sim.spec.beta, c.penrose_k_max, 0.0, c.penrose_step);
  nlohmann::json doc = to_json(r, c.sim.grid.d);
  write_json(doc, path_in(o, "penrose.json"));
  m.artifacts.push_back("penrose.json");
  m.operations.push_back("equilibrium-penrose/penrose_margin");
  m.operations.push_back("equilibrium-penrose/winding_check");
  return {{"kappa0", r.kappa0}, {"winding_ok", r.winding_ok}};
}

nlohmann::json fits_json(const std::vector<double>& t, const std::vector<std::vector<double>>& abs_rho,
                         const std::vector<Mode>& modes, int d) {
  nlohmann::json out = nlohmann::json::object();
  FitOptions fo;
  fo.t_min = 1.0;
  fo.floor_rel = 1e-9;
  fo.residual_threshold = 0.25;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out[mode_label(modes[i], d)] = {{"exponential", to_json(exponential_fit(t, abs_rho[i], fo))},
                                    {"gevrey", to_json(decay_fit(t, abs_rho[i], norm(modes[i]), default_gamma_grid(), fo))}};
  }
  return out;
}

nlohmann::json run_linear(const RunConfig& c, const DriverOptions& o, RunManifest& m) {
  LinearOptions lo = c.linear;
  lo.picard_tol = o.tol;
  const std::vector<Mode> modes = axis_modes(c.linear_k_max, c.sim.grid.n_x);
  const LinearTrajectory tr =
      linear_density_evolution(initial_spectrum(c.sim), c.sim.spec, c.sim.profile, modes, lo);
  write_linear_csv(tr, path_in(o, "linear.csv"));
  m.artifacts.push_back("linear.csv");
  m.operations.push_back("linear-damping/linear_density_evolution");
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [k, table] : tr.resolvents) {
    const std::string label = mode_label(k, c.sim.grid.d);
    res[label] = to_json(table);
    write_resolvent_csv(table, path_in(o, "resolvent_" + label + ".csv"));
    m.artifacts.push_back("resolvent_" + label + ".csv");
  }
  m.operations.push_back("linear-damping/resolvent_via_volterra");
  std::vector<std::vector<double>> abs_rho(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (const auto& v : tr.rho[i]) abs_rho[i].push_back(std::abs(v));
  nlohmann::json doc = {{"resolvents", res},
                        {"density_fits", fits_json(tr.t, abs_rho, modes, c.sim.grid.d)},
                        {"picard_iterations", tr.picard_iterations},
                        {"picard_history", tr.picard_history},
                        {"coupling_residual", tr.coupling_residual}};
  m.operations.push_back("gevrey-diagnostics/decay_fit");
  write_json(doc, path_in(o, "linear.json"));
  m.artifacts.push_back("linear.json");
  m.steps += tr.t.size();
  return doc;
}

nlohmann::json run_simulate(const RunConfig& c, const DriverOptions& o, RunManifest& m) {
  const Trajectory tr = run(c.sim);
  const std::vector<Mode> modes = axis_modes(4, c.sim.grid.n_x);
  write_simulation_csv(tr, c.sim.spec, modes, path_in(o, "simulation.csv"));
  m.artifacts.push_back("simulation.csv");
  m.operations.push_back("vlasov-sim/run");
  m.operations.push_back("field-solver/solve_poisson");
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    const std::string name = "snapshot_" + std::to_string(i) + ".bin";
    write_snapshot(tr.snapshots[i], path_in(o, name));
    m.artifacts.push_back(name);
  }
  double mass = 0.0, l2_drift = 0.0;
  for (std::size_t i = 0; i < tr.mass.size(); ++i) {
    mass = std::max(mass, tr.mass[i]);
    if (tr.l2.front() > 0.0) l2_drift = std::max(l2_drift, std::abs(tr.l2[i] / tr.l2.front() - 1.0));
  }
  std::vector<std::vector<double>> abs_rho(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (const auto& r : tr.rho) abs_rho[i].push_back(std::abs(r[modes[i]]));
  nlohmann::json audits = nlohmann::json::array();
  for (const auto& a : tr.audits) {
    audits.push_back({{"t", a.t},
                      {"lambda", a.lambda},
                      {"F_laplacian_U", a.F_laplacian_U},
                      {"F_weighted", a.F_weighted},
                      {"G_g", a.G_g},
                      {"arg_k", mode_label(a.arg_k, c.sim.grid.d)}});
  }
  nlohmann::json doc = {{"steps", tr.steps},
                        {"G_initial", tr.G_initial},
                        {"max_mass_mode", mass},
                        {"max_l2_drift", l2_drift},
                        {"density_fits", fits_json(tr.t, abs_rho, modes, c.sim.grid.d)},
                        {"audits", audits}};
  m.operations.push_back("gevrey-diagnostics/decay_fit");
  if (c.sim.audit.enabled && tr.audits.size() >= 4) {
    const RadiusAudit ra = radius_audit(tr, c.sim.audit.lambda0, c.sim.audit.delta, c.sim.lambda1, c.sim.params);
    doc["audit_bounded"] = {{"F", ra.F.bounded}, {"G", ra.G.bounded}, {"F_ratio", ra.F.ratio}, {"G_ratio", ra.G.ratio}};
    m.operations.push_back("gevrey-diagnostics/radius_audit");
  }
  write_json(doc, path_in(o, "simulation.json"));
  m.artifacts.push_back("simulation.json");
  m.steps += tr.steps;
  return doc;
}

nlohmann::json run_verify(const RunConfig& c, const DriverOptions& o, RunManifest& m, bool& pass) {
  LemmaSuiteOptions lo;
  lo.params.gamma = c.sim.params.gamma;
  lo.params.sigma = c.sim.params.sigma;
  lo.params.alpha = c.sim.params.alpha;
  lo.lambda1 = c.sim.lambda1;
  lo.seed = o.seed;
  const LemmaSuiteReport r = run_lemma_suite(lo);
  write_json(r.doc, path_in(o, "lemmas.json"));
  m.artifacts.push_back("lemmas.json");
  m.operations.push_back("gevrey-diagnostics/run_lemma_suite");
  pass = r.pass;
  return r.doc;
}

}  // namespace

DispatchResult dispatch(const std::string& sub, const RunConfig& config, const DriverOptions& o) {
  static const std::vector<std::string> known = {"penrose", "linear", "simulate", "verify", "report"};
  if (std::find(known.begin(), known.end(), sub) == known.end()) {
    throw ValidationError("unknown subcommand '" + sub + "' (expected penrose, linear, simulate, verify or report)");
  }
  if (o.threads < 1) throw ValidationError("--threads >= 1 required");
  if (!(o.tol > 0.0)) throw ValidationError("--tol > 0 required");
  config.validate();
  set_thread_count(o.threads);
  fs::create_directories(o.out);
  const auto start = std::chrono::steady_clock::now();
  clear_warnings();

  DispatchResult res;
  RunManifest& m = res.manifest;
  m.subcommand = sub;
  m.config_text = config.canonical_text();
  m.seed = o.seed;
  m.output_dir = o.out;
  m.version = tool_version();
  m.threads = o.threads;

  if (sub == "penrose") {
    res.summary = run_penrose(config, o, m);
  } else if (sub == "linear") {
    res.summary = run_linear(config, o, m);
  } else if (sub == "simulate") {
    res.summary = run_simulate(config, o, m);
  } else if (sub == "verify") {
    bool pass = false;
    res.summary = run_verify(config, o, m, pass);
    if (!pass) res.exit_code = 4;
  } else {
    nlohmann::json doc;
    doc["penrose"] = run_penrose(config, o, m);
    doc["linear"] = run_linear(config, o, m);
    doc["simulate"] = run_simulate(config, o, m);
    write_json(doc, path_in(o, "report.json"));
    m.artifacts.push_back("report.json");
    res.summary = doc;
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.warnings = warnings();
  write_json(to_json(m), path_in(o, "manifest.json"));
  return res;
}

}  // namespace landau
