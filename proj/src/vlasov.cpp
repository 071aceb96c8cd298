#include "landau/vlasov.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <sstream>

#include "landau/asymptotics.hpp"
#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/field_solver.hpp"
#include "landau/generators.hpp"
#include "landau/io.hpp"
#include "landau/transport.hpp"
#include "landau/volterra.hpp"

namespace landau {

void SimConfig::validate() const {
  grid.validate();
  spec.validate();
  if (profile.d != grid.d) throw ValidationError("equilibrium dimension differs from the grid dimension");
  if (!(dt > 0.0)) throw ValidationError("dt > 0 required");
  if (!(T_final >= 0.0)) throw ValidationError("T_final >= 0 required");
  step_count(T_final, dt);
  if (!(eps >= 0.0)) throw ValidationError("eps >= 0 required");
  if (!(lambda1 > 0.0)) throw ValidationError("lambda1 > 0 required");
  if (datum != DatumKind::file && (is_zero(k0) || grid.index_of(k0) < 0)) {
    throw ValidationError("datum mode k0 must be a nonzero mode of the grid");
  }
  if (datum == DatumKind::file && datum_file.empty()) throw ValidationError("file datum needs a path");
  if (!(blowup_factor > 1.0)) throw ValidationError("blow-up factor > 1 required");
  if (audit.enabled) {
    if (audit.every < 1) throw ValidationError("audit interval must be at least one step");
    validate_schedule(audit.lambda0, audit.delta, lambda1, params);
  }
}

double gevrey_bump_unit_G(double lambda1, const GevreyParams& params, const Mode& k0, int j_max) {
  const double k2 = norm2(k0);
  const double g = params.gamma, s = params.sigma;
  auto integrand = [&](double eta) {
    const double B = std::sqrt(1.0 + k2 + eta * eta);
    const double Bg = std::pow(B, g);
    double v = 1.0;
    if (j_max >= 1) {
      const double d = 2.0 * lambda1 * g * std::pow(B, g - 2.0) * eta;
      v += d * d;
    }
    const double lw = 2.0 * params.z * Bg - 4.0 * lambda1 * Bg + 2.0 * s * std::log(B);
    return v * std::exp(lw);
  };
  boost::math::quadrature::exp_sinh<double> q;
  // Two modes +-k0, two half lines in eta.
  return 4.0 * q.integrate(integrand);
}

InitialDatum make_initial_datum(const SimConfig& config) {
  const TorusGrid& grid = config.grid;
  const int j_max = config.j_max < 0 ? grid.d : config.j_max;
  GevreyParams gp = config.params;
  gp.z = config.lambda1;
  InitialDatum out;
  out.f0 = PhaseSpaceState(grid, 0.0, Frame::lab);
  switch (config.datum) {
    case DatumKind::single_mode: {
      for (std::size_t ix = 0; ix < grid.nx_total(); ++ix) {
        const double c = config.eps * std::cos(dot(config.k0, grid.position(ix)));
        for (std::size_t iv = 0; iv < grid.nv_total(); ++iv) out.f0.at(ix, iv) = c * config.profile.mu(grid.velocity(iv));
      }
      break;
    }
    case DatumKind::gevrey_bump: {
      out.G_target = config.eps;
      if (config.eps == 0.0) break;
      SpectralArray s;
      s.grid = grid;
      s.values.assign(grid.size(), cplx(0.0, 0.0));
      for (const Mode& k : {config.k0, negated(config.k0)}) {
        const std::size_t ik = static_cast<std::size_t>(grid.index_of(k));
        for (std::size_t ip = 0; ip < grid.nv_total(); ++ip) {
          const double B = japanese_bracket(k, grid.frequency(ip));
          s.at(ik, ip) = std::exp(-2.0 * config.lambda1 * std::pow(B, gp.gamma));
        }
      }
      out.f0 = inverse_transform(s);
      for (auto& v : out.f0.values) v = cplx(v.real(), 0.0);
      double unit = 0.0;
      if (grid.d == 1 && j_max <= 1) {
        unit = gevrey_bump_unit_G(config.lambda1, gp, config.k0, j_max);
      } else {
        unit = gen_G(out.f0, gp, j_max);
      }
      const double a = std::sqrt(config.eps / unit);
      for (auto& v : out.f0.values) v *= a;
      break;
    }
    case DatumKind::file: {
      PhaseSpaceState f = read_snapshot(config.datum_file);
      if (!(f.grid == grid)) throw ValidationError("file datum grid differs from the configured grid");
      const SpectralDensity rho = density_of(f);
      double scale = 0.0;
      for (const auto& c : rho.modes) scale = std::max(scale, std::abs(c));
      if (std::abs(rho.modes[0]) > 1e-10 * scale + 1e-14) {
        throw ValidationError("file datum rejected: perturbation does not have zero mean");
      }
      f.time = 0.0;
      f.frame = Frame::lab;
      out.f0 = f;
      break;
    }
  }
  out.G_lambda1 = gen_G(out.f0, gp, j_max);
  if (config.datum == DatumKind::gevrey_bump && config.eps > 0.0 &&
      std::abs(out.G_lambda1 / out.G_target - 1.0) > 1e-2) {
    std::ostringstream os;
    os << "unresolved datum norm: G[f0](lambda1) on the grid is " << out.G_lambda1 << " against the target "
       << out.G_target << "; either round-off at eta_max = " << grid.eta_max()
       << " is amplified by the weight or the datum does not decay inside the velocity box";
    warn(os.str());
  }
  return out;
}

StrangStepper::StrangStepper(const TorusGrid& grid, const CouplingSpec& spec, const EquilibriumProfile& profile,
                             SimMode mode, bool filter)
    : grid_(grid), spec_(spec), mode_(mode), filter_(filter) {
  mu_.resize(grid.nv_total());
  grad_mu_.resize(grid.nv_total());
  for (std::size_t iv = 0; iv < grid.nv_total(); ++iv) {
    mu_[iv] = profile.mu(grid.velocity(iv));
    grad_mu_[iv] = profile.grad_mu(grid.velocity(iv));
  }
}

std::vector<std::vector<double>> electric_field_samples(const PhaseSpaceState& state, const CouplingSpec& spec) {
  SpectralDensity rho = density_of(state);
  rho = field_to_spectral(field_to_physical(rho), state.grid.d, state.grid.n_x, state.time);
  rho.modes[0] = 0.0;
  const PotentialField U = solve_poisson(rho, spec);
  std::vector<std::vector<double>> E;
  for (const auto& e : electric_field(U)) E.push_back(field_to_physical(e));
  return E;
}

void StrangStepper::velocity_step(std::vector<cplx>& values, const std::vector<std::vector<double>>& E,
                                  double dt) const {
  const std::size_t nx = grid_.nx_total(), nv = grid_.nv_total();
  const int d = grid_.d;
  bool zero_field = true;
  for (int a = 0; a < d && zero_field; ++a)
    for (double e : E[a])
      if (e != 0.0) {
        zero_field = false;
        break;
      }
  // A vanishing field leaves f unchanged; skipping keeps zero data exactly zero.
  if (zero_field && !filter_) return;
  if (mode_ == SimMode::linearized) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      for (std::size_t iv = 0; iv < nv; ++iv) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) s += E[a][ix] * grad_mu_[iv][a];
        values[ix * nv + iv] -= dt * s;
      }
    }
    if (!filter_) return;
    v_to_eta(grid_, values);
  } else {
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iv = 0; iv < nv; ++iv) values[ix * nv + iv] += mu_[iv];
    v_to_eta(grid_, values);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      for (std::size_t ip = 0; ip < nv; ++ip) {
        const Vec3 eta = grid_.frequency(ip);
        double s = 0.0;
        for (int a = 0; a < d; ++a) s += eta[a] * E[a][ix];
        values[ix * nv + ip] *= std::polar(1.0, -s * dt);
      }
    }
  }
  if (filter_) {
    const double emax = grid_.eta_max();
    for (std::size_t ip = 0; ip < nv; ++ip) {
      const double r = norm(grid_.frequency(ip)) / emax;
      const double f = std::exp(-36.0 * std::pow(r, 36));
      for (std::size_t ix = 0; ix < nx; ++ix) values[ix * nv + ip] *= f;
    }
  }
  eta_to_v(grid_, values);
  if (mode_ == SimMode::nonlinear) {
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iv = 0; iv < nv; ++iv) values[ix * nv + iv] -= mu_[iv];
  }
}

StepInfo StrangStepper::step(PhaseSpaceState& state, double dt,
                             const std::vector<std::vector<double>>* frozen_field) const {
  if (state.frame != Frame::lab) throw ValidationError("time stepping acts on lab-frame states");
  if (!(state.grid == grid_)) throw ValidationError("state grid differs from the stepper grid");
  StepInfo info;
  std::vector<cplx>& f = state.values;
  x_to_mixed(grid_, f);
  free_transport_mixed(grid_, f, 0.5 * dt);
  std::vector<std::vector<double>> E;
  if (frozen_field) {
    E = *frozen_field;
  } else {
    SpectralDensity rho = density_of_mixed(grid_, f, state.time + 0.5 * dt);
    info.rho0 = std::abs(rho.modes[0]);
    rho = field_to_spectral(field_to_physical(rho), grid_.d, grid_.n_x, rho.t);
    rho.modes[0] = 0.0;
    const PotentialField U = solve_poisson(rho, spec_);
    info.newton_iterations = U.newton_iterations;
    for (const auto& e : electric_field(U)) E.push_back(field_to_physical(e));
  }
  mixed_to_x(grid_, f);
  velocity_step(f, E, dt);
  x_to_mixed(grid_, f);
  free_transport_mixed(grid_, f, 0.5 * dt);
  mixed_to_x(grid_, f);
  state.time += dt;
  return info;
}

StepInfo step_strang(PhaseSpaceState& state, double dt, const CouplingSpec& spec, const EquilibriumProfile& profile,
                     SimMode mode) {
  return StrangStepper(state.grid, spec, profile, mode).step(state, dt);
}

double field_energy(const SpectralDensity& U) {
  double e = 0.0;
  for (std::size_t i = 0; i < U.size(); ++i) e += norm2(U.mode_of(i)) * std::norm(U.modes[i]);
  return e / std::pow(kTwoPi, U.d);
}

namespace {

double l2_with_equilibrium(const PhaseSpaceState& f, const std::vector<double>& mu) {
  const std::size_t nv = f.grid.nv_total();
  double s = 0.0;
  for (std::size_t ix = 0; ix < f.grid.nx_total(); ++ix)
    for (std::size_t iv = 0; iv < nv; ++iv) s += std::norm(f.at(ix, iv) + mu[iv]);
  return std::sqrt(s * std::pow(f.grid.dx() * f.grid.dv(), f.grid.d));
}

AuditSample audit_state(const PhaseSpaceState& f, const SimConfig& config, const SpectralDensity& rho) {
  AuditSample a;
  a.t = f.time;
  a.lambda = lambda_schedule(f.time, config.audit.lambda0, config.audit.delta);
  GevreyParams p = config.params;
  p.z = a.lambda;
  SpectralDensity mean_free = rho;
  mean_free.modes[0] = 0.0;
  const PotentialField U = solve_poisson(mean_free, config.spec);
  SpectralDensity lap = U.U;
  for (std::size_t i = 0; i < lap.size(); ++i) lap.modes[i] *= -norm2(lap.mode_of(i));
  const FValue F = gen_F_report(lap, f.time, p, default_eta_band(f.grid));
  a.F_laplacian_U = F.value;
  a.arg_k = F.arg_k;
  a.F_weighted = F.value * std::pow(1.0 + f.time * f.time, 0.5 * (p.sigma - 1.0));
  const PhaseSpaceState g = free_transport_pullback(f, PullbackDirection::lab_to_free);
  a.G_g = gen_G(g, p, config.j_max);
  return a;
}

}  // namespace

Trajectory run(const SimConfig& config) {
  config.validate();
  const TorusGrid& grid = config.grid;
  const double budget = config.dt * grid.v_max * (grid.n_x / 2);
  if (budget > config.stability_budget) {
    std::ostringstream os;
    os << "step budget: dt v_max k_max = " << budget << " exceeds " << config.stability_budget;
    warn(os.str());
  }
  const std::size_t steps = step_count(config.T_final, config.dt);
  const StrangStepper stepper(grid, config.spec, config.profile, config.mode, config.filter);
  std::vector<double> mu(grid.nv_total());
  for (std::size_t iv = 0; iv < mu.size(); ++iv) mu[iv] = config.profile.mu(grid.velocity(iv));

  Trajectory traj;
  InitialDatum datum = make_initial_datum(config);
  traj.G_initial = datum.G_lambda1;
  PhaseSpaceState f = std::move(datum.f0);

  std::vector<bool> snapped(config.snapshot_times.size(), false);
  auto take_snapshots = [&](std::size_t n) {
    for (std::size_t s = 0; s < config.snapshot_times.size(); ++s) {
      if (!snapped[s] && std::abs(config.snapshot_times[s] - config.dt * double(n)) <= 0.5 * config.dt) {
        traj.snapshots.push_back(f);
        snapped[s] = true;
      }
    }
  };
  double reference_energy = 0.0;
  auto record = [&](std::size_t n) {
    SpectralDensity rho = density_of(f);
    traj.t.push_back(f.time);
    traj.mass.push_back(std::abs(rho.modes[0]));
    SpectralDensity mean_free = field_to_spectral(field_to_physical(rho), grid.d, grid.n_x, f.time);
    mean_free.modes[0] = 0.0;
    const double energy = field_energy(solve_poisson(mean_free, config.spec).U);
    traj.field_energy.push_back(energy);
    traj.l2.push_back(l2_with_equilibrium(f, mu));
    if (config.audit.enabled && n % static_cast<std::size_t>(config.audit.every) == 0) {
      traj.audits.push_back(audit_state(f, config, mean_free));
    }
    traj.rho.push_back(std::move(rho));
    take_snapshots(n);
    if (n == 0) reference_energy = energy;
    if (reference_energy > 0.0 && energy > config.blowup_factor * reference_energy) {
      std::ostringstream os;
      os << "unstable run: field energy grew from " << reference_energy << " to " << energy << " by t = " << f.time;
      throw BlowUpError(os.str());
    }
  };

  record(0);
  for (std::size_t n = 1; n <= steps; ++n) {
    stepper.step(f, config.dt);
    f.time = config.dt * double(n);
    record(n);
  }
  traj.steps = steps;
  traj.final_state = std::move(f);
  return traj;
}

}  // namespace landau
