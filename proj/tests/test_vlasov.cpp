#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "landau/asymptotics.hpp"
#include "landau/errors.hpp"
#include "landau/io.hpp"
#include "landau/linear_damping.hpp"
#include "landau/transport.hpp"
#include "landau/vlasov.hpp"

using namespace landau;

namespace {

SimConfig small_config(const CouplingSpec& spec, SimMode mode = SimMode::nonlinear) {
  SimConfig c;
  c.grid = {1, 32, 128, 8.0};
  c.profile = build_maxwellian(1);
  c.spec = spec;
  c.mode = mode;
  c.T_final = 5.0;
  c.dt = 1.0 / 16.0;
  c.eps = 0.05;
  return c;
}

}  // namespace

TEST_CASE("nonlinear VPME run conserves mass and the L2 norm of f + mu") {
  SimConfig c = small_config(CouplingSpec::vpme());
  const Trajectory tr = run(c);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    CHECK(tr.mass[i] < 1e-13);
    CHECK(std::abs(tr.l2[i] / tr.l2.front() - 1.0) < 1e-12);
  }
  CHECK(tr.steps == 80);
}

TEST_CASE("Strang step is time reversible") {
  for (const CouplingSpec& spec : {CouplingSpec::vp(), CouplingSpec::vpme()}) {
    SimConfig c = small_config(spec);
    const InitialDatum d = make_initial_datum(c);
    PhaseSpaceState f = d.f0;
    const StrangStepper stepper(c.grid, c.spec, c.profile, c.mode);
    for (int n = 0; n < 20; ++n) stepper.step(f, c.dt);
    for (int n = 0; n < 20; ++n) stepper.step(f, -c.dt);
    double e = 0.0, m = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      e = std::max(e, std::abs(f.values[i] - d.f0.values[i]));
      m = std::max(m, std::abs(d.f0.values[i]));
    }
    CHECK(e < 1e-8 * m);
  }
}

TEST_CASE("zero amplitude gives a zero trajectory") {
  SimConfig c = small_config(CouplingSpec::vpme());
  c.eps = 0.0;
  const Trajectory tr = run(c);
  for (const auto& rho : tr.rho)
    for (const auto& v : rho.modes) CHECK(v == cplx(0.0, 0.0));
  for (double e : tr.field_energy) CHECK(e == 0.0);
}

TEST_CASE("without an equilibrium the density streams freely") {
  SimConfig c = small_config(CouplingSpec::vp(), SimMode::linearized);
  c.profile = build_null_profile(1);
  // Datum eps cos(x) M(v) with the Maxwellian shape supplied directly.
  const EquilibriumProfile shape = build_maxwellian(1);
  PhaseSpaceState f(c.grid);
  for (std::size_t ix = 0; ix < c.grid.nx_total(); ++ix)
    for (std::size_t iv = 0; iv < c.grid.nv_total(); ++iv)
      f.at(ix, iv) = c.eps * std::cos(c.grid.position(ix)[0]) * shape.mu(c.grid.velocity(iv));
  const StrangStepper stepper(c.grid, c.spec, c.profile, c.mode);
  for (int n = 0; n < 32; ++n) stepper.step(f, c.dt);
  const double t = 2.0;
  CHECK(std::abs(density_of(f)[{1, 0, 0}]) == doctest::Approx(c.eps * kPi * std::exp(-t * t / 2.0)).epsilon(1e-10));
}

TEST_CASE("linearized simulation follows the linear engine") {
  SimConfig c = small_config(CouplingSpec::screened(), SimMode::linearized);
  c.eps = 1e-3;
  c.T_final = 10.0;
  c.grid = {1, 16, 256, 8.0};
  c.dt = 1.0 / 32.0;
  const Trajectory tr = run(c);
  LinearOptions lo;
  lo.T = 10.0;
  lo.dt = 1.0 / 32.0;
  const LinearTrajectory lin = linear_density_evolution(single_mode_spectrum(c.profile, c.eps, {1, 0, 0}),
                                                        c.spec, c.profile, {{1, 0, 0}}, lo);
  const double scale = std::abs(lin.rho[0][0]);
  for (std::size_t i = 0; i < tr.t.size(); ++i) CHECK(std::abs(tr.rho[i][{1, 0, 0}] - lin.rho[0][i]) < 2e-3 * scale);
}

TEST_CASE("results do not depend on the thread count") {
  SimConfig c = small_config(CouplingSpec::vpme());
  c.grid = {2, 8, 16, 6.0};
  c.profile = build_maxwellian(2);
  c.T_final = 1.0;
  set_thread_count(1);
  const Trajectory a = run(c);
  set_thread_count(4);
  const Trajectory b = run(c);
  set_thread_count(1);
  CHECK(a.final_state.values == b.final_state.values);
}

TEST_CASE("Gevrey bump datum is scaled to the requested generator value") {
  SimConfig c = small_config(CouplingSpec::vpme());
  c.datum = DatumKind::gevrey_bump;
  // gamma = 1 concentrates the weighted spectrum near <eta> = 4 and a band ending at eta = 16 keeps
  // round-off times e^{2 <eta>} negligible. The datum decays like e^{-sqrt(2) |v|}, so the box must be wide
  // enough that v f0 has no jump at the periodic boundary.
  c.grid = {1, 16, 256, 8.0 * kPi};
  c.eps = 1e-3;
  c.params.gamma = 1.0;
  const InitialDatum d = make_initial_datum(c);
  CHECK(d.G_target == 1e-3);
  CHECK(d.G_lambda1 == doctest::Approx(1e-3).epsilon(1e-5));
  CHECK(std::abs(density_of(d.f0).modes[0]) < 1e-15);
}

TEST_CASE("file datum round-trips through the snapshot format and nonzero mean is rejected") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string good = (dir / "landau_datum_good.bin").string(), bad = (dir / "landau_datum_bad.bin").string();
  SimConfig c = small_config(CouplingSpec::vpme());
  const InitialDatum d = make_initial_datum(c);
  write_snapshot(d.f0, good);
  const PhaseSpaceState back = read_snapshot(good);
  CHECK(back.values == d.f0.values);
  CHECK(back.grid == d.f0.grid);
  PhaseSpaceState shifted = d.f0;
  for (auto& v : shifted.values) v += 1e-3;
  write_snapshot(shifted, bad);
  c.datum = DatumKind::file;
  c.datum_file = good;
  CHECK(make_initial_datum(c).f0.values == d.f0.values);
  c.datum_file = bad;
  CHECK_THROWS_AS(make_initial_datum(c), ValidationError);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(read_snapshot(good), ValidationError);
}

TEST_CASE("configuration errors are reported") {
  SimConfig c = small_config(CouplingSpec::vpme());
  c.dt = -0.1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config(CouplingSpec::vpme());
  c.k0 = {40, 0, 0};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config(CouplingSpec::vpme());
  c.audit.enabled = true;
  c.audit.lambda0 = 0.5;  // exceeds lambda1 / 4
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("lambda0 <= lambda1/4"), ValidationError);
}

TEST_CASE("an unstable equilibrium triggers the blow-up guard") {
  SimConfig c = small_config(CouplingSpec::vp(), SimMode::linearized);
  c.profile = build_two_bump(1.0, 0.5, 0.25);
  c.grid = {1, 16, 256, 4.0};
  c.eps = 1e-6;
  c.T_final = 60.0;
  CHECK_THROWS_AS(run(c), BlowUpError);
}

TEST_CASE("radius audits are recorded on the schedule and stay bounded") {
  SimConfig c = small_config(CouplingSpec::vpme());
  c.eps = 1e-3;
  c.T_final = 10.0;
  c.audit.enabled = true;
  c.audit.every = 8;
  const Trajectory tr = run(c);
  REQUIRE(tr.audits.size() >= 10);
  for (const auto& a : tr.audits) CHECK(a.lambda == doctest::Approx(lambda_schedule(a.t, 0.25, 0.1)));
  const RadiusAudit ra = radius_audit(tr, 0.25, 0.1, 1.0, c.params);
  CHECK(ra.G.bounded);
  CHECK_THROWS_AS(radius_audit(tr, 0.2, 0.1, 1.0, c.params), ValidationError);
}

TEST_CASE("schedule validation names each constraint") {
  GevreyParams p{0.0, 0.5, 4.0, 0.25};
  CHECK_NOTHROW(validate_schedule(0.25, 0.1, 1.0, p));
  CHECK_THROWS_WITH_AS(validate_schedule(0.0, 0.1, 1.0, p), doctest::Contains("lambda0 > 0"), ValidationError);
  CHECK_THROWS_WITH_AS(validate_schedule(0.25, 0.0, 1.0, p), doctest::Contains("delta > 0"), ValidationError);
  GevreyParams low = p;
  low.gamma = 0.3;
  CHECK_THROWS_WITH_AS(validate_schedule(0.25, 0.1, 1.0, low), doctest::Contains("3*gamma > 1 + 2*delta"), ValidationError);
  GevreyParams rough = p;
  rough.sigma = 3.05;
  CHECK_THROWS_WITH_AS(validate_schedule(0.25, 0.1, 1.0, rough), doctest::Contains("sigma > 3 + delta"), ValidationError);
  CHECK(lambda_schedule(0.0, 0.25, 0.1) == doctest::Approx(0.5));
}

TEST_CASE("boundedness test separates flat and growing series") {
  std::vector<double> t, flat, grow;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(i);
    flat.push_back(1.0 + 0.1 * std::sin(0.3 * i));
    grow.push_back(std::exp(0.02 * i));
  }
  CHECK(bounded_series(t, flat).bounded);
  const BoundednessReport g = bounded_series(t, grow);
  CHECK_FALSE(g.bounded);
  CHECK(g.late_log_slope == doctest::Approx(0.02).epsilon(1e-6));
}

TEST_CASE("pairing with a test function and weak convergence of phase mixing") {
  SimConfig c = small_config(CouplingSpec::screened(), SimMode::linearized);
  c.eps = 1e-3;
  c.grid = {1, 16, 256, 8.0};
  c.T_final = 16.0;
  c.dt = 1.0 / 32.0;
  c.snapshot_times = {0.0, 4.0, 8.0, 16.0};
  const Trajectory tr = run(c);
  REQUIRE(tr.snapshots.size() == 4);
  const TestFunction phi = [](const Vec3& x, const Vec3& v) { return std::cos(x[0]) * std::exp(-v[0] * v[0]); };
  // <cos x e^{-v^2}, eps cos x M> = eps pi / sqrt(3).
  CHECK(pairing(tr.snapshots[0], phi) == doctest::Approx(1e-3 * kPi / std::sqrt(3.0)).epsilon(1e-10));
  const WeakLimitReport w = weak_limit_test(tr.snapshots, f_infinity_estimate(tr), phi);
  CHECK(w.converged);
  CHECK(w.final_ratio < 1e-3);
}
