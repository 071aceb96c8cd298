#pragma once

#include "landau/grid.hpp"

namespace landau {

enum class PullbackDirection { lab_to_free, free_to_lab };

// g(t,x,v) = f(t, x+vt, v) and its inverse, applied as the exact phase e^{+-ik.v t}
// on the velocity samples of each x-mode. Uses state.time as t.
PhaseSpaceState free_transport_pullback(const PhaseSpaceState& state, PullbackDirection direction);

// Exact free streaming f(x,v) -> f(x - v dt, v) for a lab-frame state; advances state.time.
void free_transport_step(PhaseSpaceState& state, double dt);
// Same sub-flow on a mixed (k,v) array.
void free_transport_mixed(const TorusGrid& grid, std::vector<cplx>& mixed, double dt);

// rho_hat_k(t) = int int f e^{-ik.x} dx dv. For a free-transport state this is g_hat_{k,kt}(t).
SpectralDensity density_of(const PhaseSpaceState& state);
// Same from a mixed (k,v) array in the lab frame.
SpectralDensity density_of_mixed(const TorusGrid& grid, const std::vector<cplx>& mixed, double t);

// Band-limited evaluation of f_hat_{k,eta} at an arbitrary eta from the velocity samples of mode k.
cplx spectral_value(const PhaseSpaceState& state, const Mode& k, const Vec3& eta);

}  // namespace landau
