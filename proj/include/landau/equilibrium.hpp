#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

using MultiIndex = std::array<int, 3>;

// Homogeneous equilibrium mu(v) with Fourier transform mu_hat(eta) = int mu e^{-i eta.v} dv.
struct EquilibriumProfile {
  int d = 1;
  std::string name;
  std::map<std::string, double> parameters;

  std::function<double(const Vec3&)> mu;
  std::function<Vec3(const Vec3&)> grad_mu;
  std::function<cplx(const Vec3&)> mu_hat;
  // Partial derivative d^j mu_hat / d eta^j.
  std::function<cplx(const Vec3&, const MultiIndex&)> mu_hat_derivative;
  // Optional: one-sided jet (m(0), m'(0), m''(0)) of m(s) = mu_hat(s k), s >= 0.
  std::function<std::array<cplx, 3>(const Mode&)> ray_jet_override;

  double theta0 = 1.0;  // claimed exponential decay rate of mu_hat and its derivatives
  double C_mu = 1.0;    // claimed prefactor

  // Jet of s -> mu_hat(s k) at s = 0+.
  std::array<cplx, 3> ray_jet(const Mode& k) const;
};

// (2 pi s^2)^{-d/2} exp(-|v|^2 / (2 s^2)); s = 1 is the standard Maxwellian.
EquilibriumProfile build_maxwellian(int d, double width = 1.0);

// d = 1 double Maxwellian: weight w at -u0/2 and 1-w at +u0/2, each of the given thermal width.
EquilibriumProfile build_two_bump(double u0, double w, double width = 1.0);

// d = 1 Lorentzian theta / (pi (theta^2 + v^2)), mu_hat = e^{-theta |eta|}.
EquilibriumProfile build_lorentzian(double theta);

// mu_hat == 0: no perturbative coupling.
EquilibriumProfile build_null_profile(int d);

// d = 1 profile from mu_hat samples on a uniform grid eta = 0, deta, ... (mu assumed real,
// so mu_hat(-eta) = conj(mu_hat(eta))); zero beyond the table.
EquilibriumProfile build_tabulated(const std::vector<double>& eta, const std::vector<cplx>& mu_hat_values,
                                   double theta0, double C_mu);

// Text format: lines "theta0 <value>", "C <value>", then rows "<eta> <re> [<im>]". '#' starts a comment.
EquilibriumProfile load_tabulated_profile(const std::string& path);
void save_tabulated_profile(const EquilibriumProfile& profile, const std::string& path, double eta_end,
                            int samples);

struct H1Report {
  bool pass = false;
  double theta_fit = 0.0;  // +inf for a vanishing tail
  double C_fit = 0.0;
  double theta_claimed = 0.0;
  std::vector<double> theta_per_derivative;
  std::string message;
};

// Least-squares decay fit of log|d^j mu_hat| against -theta |eta| for |j| <= j_max.
H1Report verify_H1(const EquilibriumProfile& profile, int j_max, const std::vector<double>& eta_samples);

// |int mu dv - 1|.
double normalization_defect(const EquilibriumProfile& profile);

}  // namespace landau
