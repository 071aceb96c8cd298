#pragma once

#include <array>
#include <limits>
#include <vector>

#include "landau/gevrey.hpp"
#include "landau/grid.hpp"

namespace landau {

struct GeneratorSample {
  double t = 0.0;
  GevreyParams params;
  double F_rho = 0.0;
  double G_g = 0.0;
  Mode arg_k{0, 0, 0};
};

struct FValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  Mode arg_k{0, 0, 0};
  std::size_t excluded = 0;  // nonzero modes left out because |k| t exceeds the band
};

// sup over lattice k != 0 with |k| t <= eta_band of A_{k,kt} |rho_hat_k| / |k|^alpha.
// Throws DomainError when no mode qualifies and SaturationError when the supremum overflows.
FValue gen_F_report(const SpectralDensity& rho, double t, const GevreyParams& params,
                    double eta_band = std::numeric_limits<double>::infinity());
double gen_F(const SpectralDensity& rho, double t, const GevreyParams& params,
             double eta_band = std::numeric_limits<double>::infinity());

// sum_{|j| <= j_max} sum_k int e^{2 z <k,eta>^gamma} <k,eta>^{2 sigma} |d_eta^j g_hat_{k,eta}|^2 d eta.
// j_max < 0 selects d. Throws SaturationError if a term overflows.
double gen_G(const PhaseSpaceState& g, const GevreyParams& params, int j_max = -1);

// Band of the velocity grid used by default for F on simulator output: pi n_v / (2 v_max).
double default_eta_band(const TorusGrid& grid);

// All multi-indices j with |j| <= order in dimension d.
std::vector<std::array<int, 3>> multi_indices(int d, int order);

}  // namespace landau
