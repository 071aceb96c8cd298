#include "landau/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "landau/asymptotics.hpp"
#include "landau/config.hpp"
#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/io.hpp"
#include "landau/lemmas.hpp"
#include "landau/linear_damping.hpp"
#include "landau/penrose.hpp"
#include "landau/transport.hpp"
#include "landau/vlasov.hpp"

namespace landau {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw NumericalError("compared series have different lengths");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

CriterionResult criterion_penrose() {
  CriterionResult r;
  r.id = 1;
  r.name = "Penrose suite";
  r.time_limit = 30.0;
  bool stable_ok = true;
  nlohmann::json detail;
  for (double beta : {0.0, 1.0}) {
    const PenroseReport rep = penrose_margin(build_maxwellian(1), beta, 8);
    const bool ok = rep.kappa0 > 0.0 && rep.winding_ok;
    stable_ok = stable_ok && ok;
    detail["maxwellian_beta_" + fmt(beta)] = to_json(rep, 1);
    r.summary += "maxwellian beta=" + fmt(beta) + " kappa0=" + fmt(rep.kappa0) + (rep.winding_ok ? " winding 0; " : " winding nonzero; ");
  }
  auto max_winding = [&](const EquilibriumProfile& mu, double beta, const std::string& key) {
    try {
      const PenroseReport rep = penrose_margin(mu, beta, 8);
      detail[key] = to_json(rep, 1);
      return *std::max_element(rep.winding.begin(), rep.winding.end());
    } catch (const ContourRefineError& e) {
      detail[key] = {{"error", e.what()}};
      return -1;
    }
  };
  int two_bump = 0;
  for (double beta : {0.0, 1.0}) {
    two_bump = std::max(two_bump, max_winding(build_two_bump(4.0, 0.5), beta, "two_bump_beta_" + fmt(beta)));
  }
  const int control = max_winding(build_two_bump(1.0, 0.5, 0.25), 0.0, "narrow_two_bump_control");
  detail["two_bump_max_winding"] = two_bump;
  detail["narrow_two_bump_max_winding"] = control;
  r.detail = detail;
  r.pass = stable_ok && two_bump >= 1;
  r.summary += "two-bump u0=4 max winding=" + std::to_string(two_bump) +
               " (narrow-bump control " + std::to_string(control) + ")";
  return r;
}

CriterionResult criterion_resolvent_dual_route() {
  CriterionResult r;
  r.id = 2;
  r.name = "Resolvent dual route";
  r.time_limit = 60.0;
  const EquilibriumProfile mu = build_maxwellian(1);
  std::vector<double> diffs, estimates;
  for (double dt : {1.0 / 64.0, 1.0 / 128.0}) {
    ResolventOptions o;
    o.dt = dt;
    const ResolventTable v = resolvent_via_volterra({1, 0, 0}, mu, 1.0, o);
    const ResolventTable b = resolvent_via_bromwich({1, 0, 0}, mu, 1.0, o);
    diffs.push_back(max_abs_diff(v.K, b.K));
    estimates.push_back(b.error_estimate);
  }
  const double ratio = diffs[0] / diffs[1];
  r.pass = diffs[0] <= 1e-6 && ratio >= 3.5;
  r.detail = {{"max_diff_dt_1_64", diffs[0]},
              {"max_diff_dt_1_128", diffs[1]},
              {"ratio", ratio},
              {"bromwich_error_estimate", estimates}};
  r.summary = "max|K_volterra - K_bromwich| = " + fmt(diffs[0]) + " at dt=1/64, " + fmt(diffs[1]) +
              " at dt=1/128, ratio " + fmt(ratio) + " (bromwich error estimate " + fmt(estimates[0]) + ")";
  return r;
}

CriterionResult criterion_resolvent_decay() {
  CriterionResult r;
  r.id = 3;
  r.name = "Resolvent decay";
  const EquilibriumProfile mu = build_maxwellian(1);
  std::vector<double> theta;
  bool positive = true;
  nlohmann::json fits = nlohmann::json::array();
  for (int k = 1; k <= 4; ++k) {
    const ResolventTable t = resolvent_via_volterra({k, 0, 0}, mu, 1.0);
    theta.push_back(t.fit_theta);
    positive = positive && t.fit.ok && t.fit_theta > 0.0;
    fits.push_back(to_json(t));
  }
  const double spread = *std::max_element(theta.begin(), theta.end()) / *std::min_element(theta.begin(), theta.end());
  r.pass = positive && spread <= 1.2;
  r.detail = {{"theta_over_k", theta}, {"spread", spread}, {"tables", fits}};
  r.summary = "theta(k)/|k| for k=1..4: ";
  for (double x : theta) r.summary += fmt(x) + " ";
  r.summary += "max/min " + fmt(spread) + " (limit 1.2)";
  return r;
}

CriterionResult criterion_representation() {
  CriterionResult r;
  r.id = 4;
  r.name = "Representation consistency";
  const EquilibriumProfile mu = build_maxwellian(1);
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const CouplingSpec& spec : {CouplingSpec::vp(), CouplingSpec::screened()}) {
    for (int k = 1; k <= 3; ++k) {
      const Mode mode{k, 0, 0};
      const InitialSpectrum f0 = gevrey_bump_spectrum(1, 1.0, 1.0, 1.0, mode);
      LinearOptions lo;
      const std::vector<cplx> direct = density_via_volterra(f0, mode, mu, spec.beta, lo);
      const LinearTrajectory rep = linear_density_evolution(f0, spec, mu, {mode}, lo);
      const double e = max_abs_diff(direct, rep.rho[0]) / max_abs(direct);
      worst = std::max(worst, e);
      rows.push_back({{"model", spec.name}, {"k", k}, {"relative_max_diff", e}});
    }
  }
  r.pass = worst <= 1e-8;
  r.detail = {{"cases", rows}, {"worst", worst}};
  r.summary = "max-norm difference relative to max|rho| = " + fmt(worst) + " (limit 1e-8) over vp/screened, k=1..3";
  return r;
}

CriterionResult criterion_linear_damping() {
  CriterionResult r;
  r.id = 5;
  r.name = "Linear Landau damping";
  const EquilibriumProfile mu = build_maxwellian(1);
  SimConfig c;
  c.grid.d = 1;
  c.profile = mu;
  c.spec = CouplingSpec::screened();
  c.datum = DatumKind::gevrey_bump;
  c.params.gamma = 1.0;
  c.lambda1 = 1.0;
  c.eps = 1e-3;
  const LinearTrajectory tr = linear_density_evolution(initial_spectrum(c), c.spec, mu, {{1, 0, 0}});
  const ResolventTable& table = tr.resolvents.at({1, 0, 0});
  std::vector<double> y;
  for (const auto& v : tr.rho[0]) y.push_back(std::abs(v));
  FitOptions fo;
  fo.t_min = 1.0;
  fo.floor_rel = 1e-12;
  fo.residual_threshold = 0.05;
  const DecayFit fit = exponential_fit(tr.t, y, fo);
  const double theta1 = table.fit.rate;
  const double rel = std::abs(fit.rate - theta1) / theta1;
  r.pass = fit.ok && fit.residual < 0.05 && rel <= 0.05;
  r.detail = {{"density_fit", to_json(fit)}, {"resolvent_fit", to_json(table.fit)}, {"relative_rate_gap", rel}};
  r.summary = "rho_1 rate " + fmt(fit.rate) + " residual " + fmt(fit.residual) + ", resolvent theta_1 " + fmt(theta1) +
              ", gap " + fmt(100.0 * rel) + "%";
  return r;
}

CriterionResult criterion_nonlinear_vpme() {
  CriterionResult r;
  r.id = 6;
  r.name = "Nonlinear VPME desk run";
  r.time_limit = 600.0;
  const RunConfig cfg = preset_config("vpme-1d-default");
  const SimConfig& c = cfg.sim;
  const Trajectory tr = run(c);
  double mass = 0.0, drift = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    mass = std::max(mass, tr.mass[i]);
    drift = std::max(drift, std::abs(tr.l2[i] / tr.l2.front() - 1.0));
  }
  double start = 0.0, end = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double a = std::abs(tr.rho[i][c.k0]);
    start = std::max(start, a);
    if (tr.t[i] >= 0.9 * c.T_final) end = std::max(end, a);
  }
  const double decay = end > 0.0 ? start / end : HUGE_VAL;
  const RadiusAudit audit = radius_audit(tr, c.audit.lambda0, c.audit.delta, c.lambda1, c.params);
  const bool mass_ok = mass <= 1e-12;
  r.pass = mass_ok && drift < 1e-6 && decay >= 1e3 && audit.pass;
  r.detail = {{"max_mass_mode", mass},
              {"l2_drift", drift},
              {"envelope_decay", decay},
              {"F_audit", {{"early_max", audit.F.early_max}, {"late_max", audit.F.late_max}, {"ratio", audit.F.ratio},
                           {"late_log_slope", audit.F.late_log_slope}}},
              {"G_audit", {{"early_max", audit.G.early_max}, {"late_max", audit.G.late_max}, {"ratio", audit.G.ratio},
                           {"late_log_slope", audit.G.late_log_slope}}},
              {"steps", tr.steps}};
  r.summary = "max|rho_0| " + fmt(mass) + ", L2 drift " + fmt(drift) + ", |rho_1| envelope decay " + fmt(decay) +
              ", audit late/early F " + fmt(audit.F.ratio) + " G " + fmt(audit.G.ratio);
  return r;
}

CriterionResult criterion_cross_validation() {
  CriterionResult r;
  r.id = 7;
  r.name = "Simulator/linear-engine cross-validation";
  const EquilibriumProfile mu = build_maxwellian(1);
  const Mode k1{1, 0, 0};
  LinearOptions lo;
  const LinearTrajectory lin =
      linear_density_evolution(single_mode_spectrum(mu, 1e-3, k1), CouplingSpec::screened(), mu, {k1}, lo);
  // Right-tail envelope of the reference, since |rho_1| passes through zero.
  std::vector<double> env(lin.t.size());
  double run_max = 0.0;
  for (std::size_t q = lin.t.size(); q-- > 0;) {
    run_max = std::max(run_max, std::abs(lin.rho[0][q]));
    env[q] = run_max;
  }
  std::vector<double> worst;
  for (int level = 0; level < 2; ++level) {
    SimConfig c;
    c.profile = mu;
    c.spec = CouplingSpec::screened();
    c.mode = SimMode::linearized;
    c.T_final = lo.T;
    c.dt = (1.0 / 32.0) / (1 << level);
    c.grid.n_v = 256 << level;
    const Trajectory tr = run(c);
    double w = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      const double pos = tr.t[i] / lo.dt;
      const auto j = static_cast<std::size_t>(std::llround(pos));
      if (std::abs(pos - double(j)) > 1e-9 || j >= lin.t.size()) continue;
      w = std::max(w, std::abs(std::abs(tr.rho[i][k1]) - std::abs(lin.rho[0][j])) / env[j]);
    }
    worst.push_back(w);
  }
  r.pass = worst[0] <= 0.02 && worst[1] < worst[0];
  r.detail = {{"relative_error_default", worst[0]}, {"relative_error_refined", worst[1]}};
  r.summary = "max relative |rho_1| error " + fmt(worst[0]) + " at default resolution, " + fmt(worst[1]) +
              " refined (limit 0.02, must improve)";
  return r;
}

CriterionResult criterion_lemma_suite() {
  CriterionResult r;
  r.id = 8;
  r.name = "Lemma suite";
  r.time_limit = 300.0;
  const LemmaSuiteReport rep = run_lemma_suite(LemmaSuiteOptions{});
  r.pass = rep.algebra && rep.f_le_sqrt_g && rep.integral_bounded && rep.negative_control_diverges && rep.sqrt_eps;
  r.detail = rep.doc;
  auto yn = [](bool b) { return std::string(b ? "ok" : "FAIL"); };
  r.summary = "algebra " + yn(rep.algebra) + " (C*=" + fmt(rep.doc["algebra_property"]["C_star"].get<double>()) +
              "), F<=CG^1/2 " + yn(rep.f_le_sqrt_g) + ", integrals sigma=4 " + yn(rep.integral_bounded) +
              ", sigma=2 control diverges " + yn(rep.negative_control_diverges) + ", sqrt-eps " + yn(rep.sqrt_eps) +
              " (slope " + fmt(rep.doc["sqrt_eps"]["slope_rho"].get<double>()) + ")";
  return r;
}

CriterionResult criterion_scattering() {
  CriterionResult r;
  r.id = 9;
  r.name = "Scattering and weak limit";
  SimConfig c;
  c.profile = build_maxwellian(1);
  c.spec = CouplingSpec::screened();
  c.mode = SimMode::linearized;
  c.T_final = 32.0;
  c.snapshot_times = {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  const Trajectory tr = run(c);
  const double lambda0 = 0.25;
  GevreyParams p = c.params;
  p.z = lambda0 / 4.0;
  const std::vector<PhaseSpaceState> dyadic(tr.snapshots.begin() + 2, tr.snapshots.end());
  const CauchyReport cauchy = dyadic_cauchy(dyadic, p, lambda0);
  const double first = scattering_distance(free_transport_pullback(tr.snapshots[1], PullbackDirection::lab_to_free),
                                           free_transport_pullback(tr.snapshots[2], PullbackDirection::lab_to_free),
                                           p, lambda0);
  const TestFunction phi = [](const Vec3& x, const Vec3& v) { return std::cos(x[0]) * std::exp(-v[0] * v[0]); };
  const WeakLimitReport weak = weak_limit_test(tr.snapshots, f_infinity_estimate(tr), phi);
  r.pass = cauchy.geometric && weak.converged;
  r.detail = {{"dyadic_times", cauchy.t},
              {"distances", cauchy.distances},
              {"ratios", cauchy.ratios},
              {"log_slope", cauchy.log_slope},
              {"floor", cauchy.floor},
              {"distance_1_2", first},
              {"pairing_t", weak.t},
              {"pairing", weak.pairing},
              {"pairing_final_ratio", weak.final_ratio}};
  r.summary = "dyadic distances on [2,32]:";
  for (double d : cauchy.distances) r.summary += " " + fmt(d);
  r.summary += ", weak pairing final/initial " + fmt(weak.final_ratio);
  return r;
}

CriterionResult criterion_determinism(const std::string& out_dir) {
  CriterionResult r;
  r.id = 10;
  r.name = "Determinism";
  bool same = true;
  int files = 0;
  nlohmann::json detail = nlohmann::json::object();
  const int saved = thread_count();
  const ScopedWarningMute mute;
  for (const std::string& preset : preset_names()) {
    const RunConfig cfg = preset_config(preset);
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      DriverOptions o;
      o.threads = 1;
      o.out = (fs::path(out_dir) / "determinism" / preset / ("run" + std::to_string(rep))).string();
      fs::remove_all(o.out);
      dispatch("report", cfg, o);
      dirs.push_back(o.out);
    }
    std::vector<std::string> differing;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const std::string name = entry.path().filename().string();
      if (name == "manifest.json") continue;  // carries wall-clock time
      ++files;
      if (read_bytes(entry.path()) != read_bytes(dirs[1] / name)) differing.push_back(name);
    }
    same = same && differing.empty();
    detail[preset] = {{"differing", differing}};
  }
  set_thread_count(saved);
  r.pass = same && files > 0;
  r.detail = detail;
  r.summary = std::to_string(files) + " artifacts over " + std::to_string(preset_names().size()) + " presets " +
              (same ? "byte-identical" : "differ") + " across repeated single-threaded runs";
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o) {
  fs::create_directories(o.out);
  set_thread_count(o.threads);
  using Fn = std::function<CriterionResult()>;
  const std::vector<Fn> all = {criterion_penrose,       criterion_resolvent_dual_route, criterion_resolvent_decay,
                               criterion_representation, criterion_linear_damping,       criterion_nonlinear_vpme,
                               criterion_cross_validation, criterion_lemma_suite,       criterion_scattering,
                               [&] { return criterion_determinism(o.out); }};
  std::vector<CriterionResult> out;
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = int(i) + 1;
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) continue;
    set_thread_count(o.threads);
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = all[i]();
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.pass = false;
      res.summary = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.time_limit > 0.0 && res.seconds > res.time_limit) {
      res.pass = false;
      res.summary += "; runtime " + fmt(res.seconds) + " s exceeds " + fmt(res.time_limit) + " s";
    }
    doc.push_back({{"id", res.id},
                   {"name", res.name},
                   {"pass", res.pass},
                   {"seconds", res.seconds},
                   {"summary", res.summary},
                   {"detail", res.detail}});
    if (o.on_result) o.on_result(res);
    out.push_back(res);
  }
  write_json(doc, (fs::path(o.out) / "acceptance.json").string());
  return out;
}

}  // namespace landau
