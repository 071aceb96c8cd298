#pragma once

#include <functional>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

// phi(t) + int_0^t kappa(t,s) phi(s) ds = S(t) on the uniform grid t_i = i dt, i = 0..N, N dt = T.
struct VolterraProblem {
  // General kernel kappa(t, s), evaluated for t >= s only.
  std::function<cplx(double, double)> kernel;
  // Convolution kernel kappa(t - s); used instead of `kernel` when set.
  std::function<cplx(double)> convolution_kernel;
  std::function<cplx(double)> source;
  double T = 20.0;
  double dt = 1.0 / 64.0;
  // One Richardson step: combine the dt and dt/2 solutions as (4 phi_{dt/2} - phi_dt) / 3.
  bool extrapolate = false;
};

std::size_t step_count(double T, double dt);
std::vector<double> time_grid(double T, double dt);

// Trapezoidal product integration with implicit diagonal term (second order);
// optionally Richardson-extrapolated.
std::vector<cplx> volterra_solve(const VolterraProblem& problem);

// y_n = int_0^{t_n} K(t_n - s) f(s) ds from samples K_i = K(t_i), f_i = f(t_i),
// with sixth-order Gregory end corrections; the first five steps integrate degree-6 interpolants.
std::vector<cplx> convolve_samples(const std::vector<cplx>& K, const std::vector<cplx>& f, double dt);

// Quadrature weights of the rule used by convolve_samples on n+1 equispaced points (unit spacing).
std::vector<double> gregory_weights(std::size_t n);

}  // namespace landau
