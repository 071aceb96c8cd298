#pragma once

#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/equilibrium.hpp"
#include "landau/fit.hpp"
#include "landau/grid.hpp"
#include "landau/volterra.hpp"

namespace landau {

enum class ResolventMethod { volterra, bromwich };

// K_hat_k(t_i), the time-domain resolvent of 1 + C L[t mu_hat(kt)], with a fitted bound
// |K_hat_k(t)| <= C e^{-theta |k| t}.
struct ResolventTable {
  Mode k{1, 0, 0};
  double beta = 0.0;
  ResolventMethod method = ResolventMethod::volterra;
  std::vector<double> t;
  std::vector<cplx> K;
  double fit_C = 0.0;
  double fit_theta = 0.0;
  DecayFit fit;
  // Bromwich only: step-halving plus truncation estimate of the quadrature error.
  double error_estimate = 0.0;
  double gamma0 = 0.0;
  double omega = 0.0;
  double step = 0.0;
};

struct ResolventOptions {
  double T = 20.0;
  double dt = 1.0 / 64.0;
  bool extrapolate = true;
  // Bromwich line Re lambda = gamma0, trapezoid step in Im lambda, truncation |Im lambda| <= omega.
  double gamma0 = 0.1;
  double step = 0.1;
  double omega = 300.0;
  // Fit window for the decay bound.
  FitOptions fit{1.0, std::numeric_limits<double>::infinity(), 1e-7, 0.25};
};

// K + C int_0^t K(s) (t-s) mu_hat(k(t-s)) ds = -C t mu_hat(kt).
ResolventTable resolvent_via_volterra(const Mode& k, const EquilibriumProfile& profile, double beta,
                                      const ResolventOptions& options = {});

// Trapezoidal Bromwich integral of -(D-1)/D along Re lambda = gamma0, after analytic
// subtraction of its 1/lambda^2..1/lambda^4 asymptotics. Throws StabilityError if D vanishes on the line.
ResolventTable resolvent_via_bromwich(const Mode& k, const EquilibriumProfile& profile, double beta,
                                      const ResolventOptions& options = {});

// Fills fit, fit_theta and fit_C from the samples.
void fit_resolvent(ResolventTable& table, const FitOptions& options);

// Initial perturbation in Fourier variables: f0_hat(k, eta) for the listed modes, zero elsewhere.
struct InitialSpectrum {
  int d = 1;
  std::vector<Mode> support;
  std::function<cplx(const Mode&, const Vec3&)> value;
  // |eta| beyond which the values are not resolved.
  double eta_band = std::numeric_limits<double>::infinity();

  bool supported(const Mode& k) const;
  cplx operator()(const Mode& k, const Vec3& eta) const;
};

// f0 = eps cos(k0.x) mu(v).
InitialSpectrum single_mode_spectrum(const EquilibriumProfile& profile, double eps, const Mode& k0);
// f0_hat_{+-k0, eta} = a exp(-2 lambda1 <k0, eta>^gamma).
InitialSpectrum gevrey_bump_spectrum(int d, double amplitude, double lambda1, double gamma, const Mode& k0);
// Band-limited interpolation of a sampled lab-frame state at t = 0.
InitialSpectrum spectrum_from_state(const PhaseSpaceState& f0);

// S_k(t) = f0_hat_{k,kt} + C int_0^t h_hat(U)_k(s) (t-s) mu_hat(k(t-s)) ds.
// The memory part is tabulated on the grid of hU and interpolated linearly between nodes.
class SourceTerm {
 public:
  SourceTerm(InitialSpectrum f0, const Mode& k, const EquilibriumProfile& profile, double beta);
  SourceTerm(InitialSpectrum f0, const Mode& k, const EquilibriumProfile& profile, double beta,
             std::vector<cplx> hU_samples, double dt);
  cplx operator()(double t) const;
  cplx memory(double t) const;

 private:
  InitialSpectrum f0_;
  Mode k_;
  std::vector<cplx> memory_;
  double dt_ = 0.0;
};

struct LinearOptions {
  double T = 20.0;
  double dt = 1.0 / 64.0;
  ResolventOptions resolvent;
  // h != 0: lattice n_x^d for the Picard iteration and its stopping rule.
  int n_x = 32;
  double picard_tol = 1e-10;
  int max_picard = 40;
};

struct LinearTrajectory {
  int d = 1;
  std::vector<double> t;
  std::vector<Mode> modes;
  std::vector<std::vector<cplx>> rho;  // [mode][time]
  std::vector<std::vector<cplx>> U;
  int picard_iterations = 0;
  std::vector<double> picard_history;  // max change in rho per iteration
  double coupling_residual = 0.0;      // max |(beta+|k|^2) U + h(U)_k - rho| over modes and times
  std::map<Mode, ResolventTable> resolvents;

  std::size_t mode_index(const Mode& k) const;
  SpectralDensity density_at(std::size_t i, int n_x) const;
};

// rho_hat_k(t) = f0_hat_{k,kt} + int_0^t K_hat_k(t-s) f0_hat_{k,ks} ds; for h != 0 coupled to the
// potential equation by Picard iteration over the whole lattice. Reports the modes in k_set.
LinearTrajectory linear_density_evolution(const InitialSpectrum& f0, const CouplingSpec& spec,
                                          const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                          const LinearOptions& options = {});
LinearTrajectory linear_potential_evolution(const InitialSpectrum& f0, const CouplingSpec& spec,
                                            const EquilibriumProfile& profile, const std::vector<Mode>& k_set,
                                            const LinearOptions& options = {});

// Direct (Richardson-extrapolated) Volterra solve of the density equation for h = 0.
std::vector<cplx> density_via_volterra(const InitialSpectrum& f0, const Mode& k, const EquilibriumProfile& profile,
                                       double beta, const LinearOptions& options = {});

}  // namespace landau
