#pragma once

#include <vector>

#include "landau/equilibrium.hpp"

namespace landau {

// |k|^2 / (beta + |k|^2); zero for k = 0.
double coupling_prefactor(const Mode& k, double beta);

// Composite Gauss-Legendre quadrature of L(lambda) = int_0^T t mu_hat(k t) e^{-lambda t} dt
// for lambda with Re lambda >= re_min and |Im lambda| <= imag_max.
// T = (30 / (theta0 |k|)) (1 + |re_min| / (theta0 |k|)); panels no longer than 1/(theta0 |k|) or pi/imag_max.
class LaplaceQuadrature {
 public:
  LaplaceQuadrature(const Mode& k, const EquilibriumProfile& profile, double re_min, double imag_max);

  cplx transform(cplx lambda) const;
  // Values on lambda_m = a + i (y0 + m h), m = 0..n-1, by phase recurrence over the nodes.
  std::vector<cplx> transform_line(double a, double y0, double h, std::size_t n) const;

  double t_max() const { return t_max_; }
  double panel() const { return panel_; }
  std::size_t node_count() const { return t_.size(); }

 private:
  std::vector<double> t_;
  std::vector<cplx> w_;  // Gauss weight * t * mu_hat(k t)
  double t_max_ = 0.0;
  double panel_ = 0.0;
};

// D_k(lambda) = 1 + C_{k,beta} L(lambda). Throws DomainError when Re lambda <= -theta0 |k| / 2.
cplx dispersion_value(const Mode& k, cplx lambda, const EquilibriumProfile& profile, double beta);

// Profile-derived bound constants along the ray of k:
// V = int_0^inf |d/ds (s m(s))| ds and M1 = int_0^inf s |m(s)| ds with m(s) = mu_hat(s k/|k|).
struct RayBounds {
  double variation = 0.0;
  double first_moment = 0.0;
};
RayBounds ray_bounds(const Mode& k, const EquilibriumProfile& profile);

// Argument-principle winding number of D_k along the boundary of {Re lambda >= 0, |lambda| <= R}.
// radius <= 0 selects R = 4 C V / |k|, where |D_k - 1| <= 1/4 on the arc.
// Throws ContourRefineError if the contour passes within 1e-10 of a zero.
int winding_check(const Mode& k, const EquilibriumProfile& profile, double beta, double radius = 0.0);

struct PenroseReport {
  double kappa0 = 0.0;              // min |D_k(i tau)| over the scan; 0 when any winding is nonzero
  double boundary_min = 0.0;        // raw scan minimum
  std::vector<Mode> k_scanned;
  std::vector<int> winding;         // per scanned mode
  std::vector<double> mode_minimum; // per scanned mode min |D_k(i tau)|
  Mode worst_k{0, 0, 0};
  cplx worst_lambda{0.0, 0.0};
  bool winding_ok = false;
  std::vector<Mode> unstable_modes;
  // Truncation budget.
  double t_max = 0.0;
  double omega = 0.0;
  double boundary_step = 0.0;
  double quadrature_panel = 0.0;
  // |k| > k_max: |D_k - 1| <= M1 / (k_max + 1)^2 uniformly on Re lambda >= 0.
  double tail_bound = 0.0;
  double beta = 0.0;
  int k_max = 0;
};

// kappa_resolution sets the automatic Omega: beyond it |D_k - 1| <= kappa_resolution.
PenroseReport penrose_margin(const EquilibriumProfile& profile, double beta, int k_max, double omega = 0.0,
                             double boundary_step = 0.01, double kappa_resolution = 0.05);

// All lattice modes with 1 <= |k| <= k_max in dimension d.
std::vector<Mode> lattice_shell(int d, int k_max);

}  // namespace landau
