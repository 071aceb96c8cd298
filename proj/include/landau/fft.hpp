#pragma once

#include <vector>

#include "landau/grid.hpp"

namespace landau {

enum class Axes { x, v, all };

// Unnormalized FFTW transform over the chosen axes, in place. sign -1 forward, +1 backward.
void fft_inplace(const TorusGrid& grid, std::vector<cplx>& data, Axes axes, int sign);

// Scaled transforms approximating the continuous Fourier integrals:
// f_hat(k,eta) = int int f e^{-ik.x} e^{-i eta.v} dx dv, and its inverse.
SpectralArray forward_transform(const PhaseSpaceState& state);
PhaseSpaceState inverse_transform(const SpectralArray& spectrum);

// x-only transforms: lab (x,v) samples <-> mixed (k,v) representation with
// mixed(k,v) = int f(x,v) e^{-ik.x} dx.
void x_to_mixed(const TorusGrid& grid, std::vector<cplx>& data);
void mixed_to_x(const TorusGrid& grid, std::vector<cplx>& data);
// v-only transforms: (., v) samples <-> (., eta) with the continuous scaling in v.
void v_to_eta(const TorusGrid& grid, std::vector<cplx>& data);
void eta_to_v(const TorusGrid& grid, std::vector<cplx>& data);

// Torus fields on n_x^d points. to_spectral: c_k = int phi e^{-ik.x} dx.
SpectralDensity field_to_spectral(const std::vector<double>& values, int d, int n_x, double t = 0.0);
SpectralDensity field_to_spectral(const std::vector<cplx>& values, int d, int n_x, double t = 0.0);
std::vector<cplx> field_to_physical_complex(const SpectralDensity& field);
std::vector<double> field_to_physical(const SpectralDensity& field);

}  // namespace landau
