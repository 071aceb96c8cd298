#include "landau/linear_damping.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/field_solver.hpp"
#include "landau/gevrey.hpp"
#include "landau/penrose.hpp"
#include "landau/transport.hpp"

namespace landau {

namespace {

void check_band(const InitialSpectrum& f0, const Mode& k, double T) {
  if (norm(k) * T > f0.eta_band) {
    std::ostringstream os;
    os << "source truncation: |k| t reaches " << norm(k) * T << " beyond the resolved band " << f0.eta_band;
    warn(os.str());
  }
}

}  // namespace

bool InitialSpectrum::supported(const Mode& k) const {
  return std::find(support.begin(), support.end(), k) != support.end();
}

cplx InitialSpectrum::operator()(const Mode& k, const Vec3& eta) const {
  if (!value || !supported(k)) return cplx(0.0, 0.0);
  return value(k, eta);
}

InitialSpectrum single_mode_spectrum(const EquilibriumProfile& profile, double eps, const Mode& k0) {
  if (is_zero(k0)) throw ValidationError("single-mode datum needs k0 != 0");
  InitialSpectrum s;
  s.d = profile.d;
  if (eps == 0.0) return s;
  s.support = {k0, negated(k0)};
  const double factor = eps * std::pow(kTwoPi, profile.d) / 2.0;
  auto mu_hat = profile.mu_hat;
  s.value = [factor, mu_hat](const Mode&, const Vec3& eta) { return factor * mu_hat(eta); };
  return s;
}

InitialSpectrum gevrey_bump_spectrum(int d, double amplitude, double lambda1, double gamma, const Mode& k0) {
  if (is_zero(k0)) throw ValidationError("Gevrey bump needs k0 != 0");
  if (!(lambda1 > 0.0)) throw ValidationError("Gevrey bump needs lambda1 > 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("Gevrey bump needs gamma in (0, 1]");
  InitialSpectrum s;
  s.d = d;
  if (amplitude == 0.0) return s;
  s.support = {k0, negated(k0)};
  s.value = [=](const Mode& k, const Vec3& eta) {
    return cplx(amplitude * std::exp(-2.0 * lambda1 * std::pow(japanese_bracket(k, eta), gamma)), 0.0);
  };
  return s;
}

InitialSpectrum spectrum_from_state(const PhaseSpaceState& f0) {
  if (f0.frame != Frame::lab || f0.time != 0.0) {
    throw ValidationError("initial spectrum needs a lab-frame state at t = 0");
  }
  InitialSpectrum s;
  s.d = f0.grid.d;
  std::vector<cplx> mixed = f0.values;
  x_to_mixed(f0.grid, mixed);
  const std::size_t nv = f0.grid.nv_total();
  double total = 0.0;
  std::vector<double> energy(f0.grid.nx_total(), 0.0);
  for (std::size_t ix = 0; ix < energy.size(); ++ix) {
    for (std::size_t iv = 0; iv < nv; ++iv) energy[ix] += std::norm(mixed[ix * nv + iv]);
    total += energy[ix];
  }
  if (std::abs(density_of(f0).modes[0]) > 1e-9 * std::sqrt(total) + 1e-14) {
    throw ValidationError("initial perturbation must have zero mean");
  }
  for (std::size_t ix = 0; ix < energy.size(); ++ix) {
    if (energy[ix] > 1e-28 * total && total > 0.0) s.support.push_back(f0.grid.mode_of(ix));
  }
  s.eta_band = f0.grid.eta_max();
  auto state = std::make_shared<PhaseSpaceState>(f0);
  s.value = [state](const Mode& k, const Vec3& eta) { return spectral_value(*state, k, eta); };
  return s;
}

SourceTerm::SourceTerm(InitialSpectrum f0, const Mode& k, const EquilibriumProfile&, double)
    : f0_(std::move(f0)), k_(k) {}

SourceTerm::SourceTerm(InitialSpectrum f0, const Mode& k, const EquilibriumProfile& profile, double beta,
                       std::vector<cplx> hU_samples, double dt)
    : f0_(std::move(f0)), k_(k), dt_(dt) {
  if (!(dt > 0.0)) throw ValidationError("source term needs dt > 0");
  const double C = coupling_prefactor(k, beta);
  std::vector<cplx> kernel(hU_samples.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const double tau = dt * double(i);
    kernel[i] = C * tau * profile.mu_hat(scaled(k, tau));
  }
  memory_ = convolve_samples(kernel, hU_samples, dt);
  if (!hU_samples.empty()) check_band(f0_, k, dt * double(hU_samples.size() - 1));
}

cplx SourceTerm::memory(double t) const {
  if (memory_.empty() || t <= 0.0) return cplx(0.0, 0.0);
  const double x = t / dt_;
  const std::size_t i = static_cast<std::size_t>(x);
  if (i + 1 >= memory_.size()) {
    if (x > double(memory_.size() - 1) + 1e-9) throw DomainError("source term evaluated beyond its memory table");
    return memory_.back();
  }
  const double a = x - double(i);
  return (1.0 - a) * memory_[i] + a * memory_[i + 1];
}

cplx SourceTerm::operator()(double t) const { return f0_(k_, scaled(k_, t)) + memory(t); }

std::size_t LinearTrajectory::mode_index(const Mode& k) const {
  auto it = std::find(modes.begin(), modes.end(), k);
  if (it == modes.end()) throw DomainError("mode not present in the trajectory");
  return static_cast<std::size_t>(it - modes.begin());
}

SpectralDensity LinearTrajectory::density_at(std::size_t i, int n_x) const {
  SpectralDensity out(d, n_x, t.at(i));
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const long idx = out.index_of(modes[m]);
    if (idx >= 0) out.modes[idx] = rho[m][i];
  }
  return out;
}

namespace {

ResolventTable resolvent_for(const Mode& k, const EquilibriumProfile& profile, double beta,
                             const LinearOptions& options) {
  ResolventOptions ro = options.resolvent;
  ro.T = options.T;
  ro.dt = options.dt;
  return resolvent_via_volterra(k, profile, beta, ro);
}

// y + K * y over the time grid.
std::vector<cplx> apply_resolvent(const std::vector<cplx>& K, const std::vector<cplx>& y, double dt) {
  std::vector<cplx> out = convolve_samples(K, y, dt);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

LinearTrajectory evolve_screened(const InitialSpectrum& f0, const CouplingSpec& spec,
                                 const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                 const LinearOptions& options) {
  LinearTrajectory traj;
  traj.d = profile.d;
  traj.t = time_grid(options.T, options.dt);
  traj.modes = k_set;
  traj.rho.assign(k_set.size(), std::vector<cplx>(traj.t.size()));
  traj.U.assign(k_set.size(), std::vector<cplx>(traj.t.size()));
  std::vector<ResolventTable> tables(k_set.size());
  parallel_for(k_set.size(), [&](std::size_t m) {
    const Mode& k = k_set[m];
    if (is_zero(k)) return;
    tables[m] = resolvent_for(k, profile, spec.beta, options);
    std::vector<cplx> S(traj.t.size());
    for (std::size_t i = 0; i < S.size(); ++i) S[i] = f0(k, scaled(k, traj.t[i]));
    traj.rho[m] = apply_resolvent(tables[m].K, S, options.dt);
    const double denom = spec.beta + norm2(k);
    for (std::size_t i = 0; i < S.size(); ++i) traj.U[m][i] = traj.rho[m][i] / denom;
  });
  for (std::size_t m = 0; m < k_set.size(); ++m) {
    if (!is_zero(k_set[m])) traj.resolvents[k_set[m]] = std::move(tables[m]);
  }
  return traj;
}

LinearTrajectory evolve_coupled(const InitialSpectrum& f0, const CouplingSpec& spec,
                                const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                const LinearOptions& options) {
  if (!(spec.beta > 0.0)) throw ValidationError("linear evolution with h != 0 requires beta > 0");
  const int d = profile.d;
  const std::vector<double> t = time_grid(options.T, options.dt);
  const std::size_t nt = t.size();
  SpectralDensity lattice(d, options.n_x);
  const std::size_t nk = lattice.size();
  for (const Mode& k : k_set) {
    if (lattice.index_of(k) < 0) throw ValidationError("requested mode lies outside the Picard lattice");
  }

  std::vector<ResolventTable> tables(nk);
  std::vector<std::vector<cplx>> f0_line(nk, std::vector<cplx>(nt, cplx(0.0, 0.0)));
  parallel_for(nk, [&](std::size_t j) {
    const Mode k = lattice.mode_of(j);
    if (is_zero(k)) return;
    tables[j] = resolvent_for(k, profile, spec.beta, options);
    if (f0.supported(k)) {
      for (std::size_t i = 0; i < nt; ++i) f0_line[j][i] = f0(k, scaled(k, t[i]));
    }
  });

  std::vector<std::vector<cplx>> U(nk, std::vector<cplx>(nt)), rho(nk, std::vector<cplx>(nt)),
      hU(nk, std::vector<cplx>(nt, cplx(0.0, 0.0))), rho_prev;

  auto potential_from = [&]() {
    parallel_for(nk, [&](std::size_t j) {
      const Mode k = lattice.mode_of(j);
      if (is_zero(k)) {
        for (std::size_t i = 0; i < nt; ++i) U[j][i] = -hU[j][i] / spec.beta;
        return;
      }
      const double denom = spec.beta + norm2(k);
      std::vector<cplx> T(nt);
      for (std::size_t i = 0; i < nt; ++i) T[i] = (f0_line[j][i] - hU[j][i]) / denom;
      U[j] = apply_resolvent(tables[j].K, T, options.dt);
    });
  };
  auto nonlinearity_from_potential = [&](std::vector<std::vector<cplx>>& out) {
    parallel_for(nt, [&](std::size_t i) {
      SpectralDensity Ui(d, options.n_x, t[i]);
      for (std::size_t j = 0; j < nk; ++j) Ui.modes[j] = U[j][i];
      SpectralDensity h = h_of_field(Ui, spec);
      for (std::size_t j = 0; j < nk; ++j) out[j][i] = h.modes[j];
    });
  };
  auto density_from = [&]() {
    for (std::size_t j = 0; j < nk; ++j) {
      const double denom = spec.beta + norm2(lattice.mode_of(j));
      for (std::size_t i = 0; i < nt; ++i) rho[j][i] = denom * U[j][i] + hU[j][i];
    }
  };

  LinearTrajectory traj;
  traj.d = d;
  traj.t = t;
  traj.modes = k_set;
  double previous_change = HUGE_VAL;
  for (int it = 1; it <= options.max_picard; ++it) {
    potential_from();
    density_from();
    traj.picard_iterations = it;
    if (it > 1) {
      double change = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < nk; ++j) {
        for (std::size_t i = 0; i < nt; ++i) {
          change = std::max(change, std::abs(rho[j][i] - rho_prev[j][i]));
          scale = std::max(scale, std::abs(rho[j][i]));
        }
      }
      traj.picard_history.push_back(change);
      if (change <= options.picard_tol * scale) break;
      if (it > 2 && change >= previous_change) {
        std::ostringstream os;
        os << "Picard iteration does not contract (change " << change << " after " << previous_change
           << "): amplitude too large";
        throw ConvergenceError(os.str());
      }
      previous_change = change;
      if (it == options.max_picard) throw ConvergenceError("Picard iteration did not reach tolerance");
    }
    rho_prev = rho;
    nonlinearity_from_potential(hU);
  }

  // Coupling identity audited with h(U) recomputed from the final potential.
  std::vector<std::vector<cplx>> h_final(nk, std::vector<cplx>(nt));
  nonlinearity_from_potential(h_final);
  traj.coupling_residual = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < nk; ++j) {
    const double denom = spec.beta + norm2(lattice.mode_of(j));
    for (std::size_t i = 0; i < nt; ++i) {
      traj.coupling_residual =
          std::max(traj.coupling_residual, std::abs(denom * U[j][i] + h_final[j][i] - rho[j][i]));
      scale = std::max(scale, std::abs(rho[j][i]));
    }
  }
  if (traj.coupling_residual > 10.0 * options.picard_tol * scale + 1e-14) {
    std::ostringstream os;
    os << "coupling identity residual " << traj.coupling_residual << " exceeds tolerance";
    throw ConvergenceError(os.str());
  }

  traj.rho.resize(k_set.size());
  traj.U.resize(k_set.size());
  for (std::size_t m = 0; m < k_set.size(); ++m) {
    const std::size_t j = static_cast<std::size_t>(lattice.index_of(k_set[m]));
    traj.rho[m] = rho[j];
    traj.U[m] = U[j];
    if (!is_zero(k_set[m])) traj.resolvents[k_set[m]] = tables[j];
  }
  return traj;
}

}  // namespace

LinearTrajectory linear_density_evolution(const InitialSpectrum& f0, const CouplingSpec& spec,
                                          const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                          const LinearOptions& options) {
  spec.validate();
  if (f0.d != profile.d) throw ValidationError("initial spectrum and profile differ in dimension");
  for (const Mode& k : f0.support) {
    if (is_zero(k)) throw ValidationError("initial perturbation must have zero mean");
    check_band(f0, k, options.T);
  }
  if (spec.has_h()) return evolve_coupled(f0, spec, profile, k_set, options);
  return evolve_screened(f0, spec, profile, k_set, options);
}

LinearTrajectory linear_potential_evolution(const InitialSpectrum& f0, const CouplingSpec& spec,
                                            const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                            const LinearOptions& options) {
  return linear_density_evolution(f0, spec, profile, k_set, options);
}

std::vector<cplx> density_via_volterra(const InitialSpectrum& f0, const Mode& k, const EquilibriumProfile& profile,
                                       double beta, const LinearOptions& options) {
  if (is_zero(k)) return std::vector<cplx>(time_grid(options.T, options.dt).size(), cplx(0.0, 0.0));
  const double C = coupling_prefactor(k, beta);
  VolterraProblem p;
  p.convolution_kernel = [&](double tau) { return C * tau * profile.mu_hat(scaled(k, tau)); };
  p.source = [&](double t) { return f0(k, scaled(k, t)); };
  p.T = options.T;
  p.dt = options.dt;
  p.extrapolate = true;
  return volterra_solve(p);
}

}  // namespace landau
