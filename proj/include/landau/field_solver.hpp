#pragma once

#include <vector>

#include "landau/coupling.hpp"
#include "landau/grid.hpp"

namespace landau {

struct PotentialField {
  SpectralDensity U;                  // U_hat_k on the density lattice
  double residual_norm = 0.0;         // max-norm of -Delta U + beta U + h(U) - rho on the grid
  int newton_iterations = 0;
  std::vector<double> residual_history;
};

// Small-solution branch of -Delta U + beta U + h(U) = rho by damped Newton from U = 0.
// rho must be mean-free; tol is relative to max |rho| on the grid. For beta = 0 with h != 0 the mean of U is an extra unknown fixed by <h(U)> = 0.
PotentialField solve_poisson(const SpectralDensity& rho, const CouplingSpec& spec, double tol = 1e-12);

// Max-norm defect of the coupling equation on the grid.
double poisson_residual(const SpectralDensity& U, const SpectralDensity& rho, const CouplingSpec& spec);

// E_hat_k = -i k U_hat_k, one spectral field per spatial component.
std::vector<SpectralDensity> electric_field(const SpectralDensity& U);
std::vector<SpectralDensity> electric_field(const PotentialField& U);

// Spectral coefficients of h(U) on the lattice of U.
SpectralDensity h_of_field(const SpectralDensity& U, const CouplingSpec& spec);

}  // namespace landau
