#include <cmath>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/linear_damping.hpp"
#include "landau/penrose.hpp"

namespace landau {

void fit_resolvent(ResolventTable& table, const FitOptions& options) {
  std::vector<double> mag(table.K.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(table.K[i]);
  table.fit = exponential_fit(table.t, mag, options);
  const double kn = norm(table.k);
  table.fit_theta = (kn > 0.0 && table.fit.rate > 0.0) ? table.fit.rate / kn : 0.0;
  table.fit_C = 0.0;
  if (table.fit_theta > 0.0) {
    double peak = 0.0;
    for (double m : mag) peak = std::max(peak, m);
    for (std::size_t i = 0; i < mag.size(); ++i) {
      if (table.t[i] > options.t_max || mag[i] <= options.floor_rel * peak) continue;
      table.fit_C = std::max(table.fit_C, mag[i] * std::exp(table.fit.rate * table.t[i]));
    }
  }
}

ResolventTable resolvent_via_volterra(const Mode& k, const EquilibriumProfile& profile, double beta,
                                      const ResolventOptions& options) {
  ResolventTable table;
  table.k = k;
  table.beta = beta;
  table.method = ResolventMethod::volterra;
  table.t = time_grid(options.T, options.dt);
  if (is_zero(k)) {
    table.K.assign(table.t.size(), cplx(0.0, 0.0));
    return table;
  }
  const double C = coupling_prefactor(k, beta);
  VolterraProblem p;
  p.convolution_kernel = [&](double tau) { return C * tau * profile.mu_hat(scaled(k, tau)); };
  p.source = [&](double t) { return -C * t * profile.mu_hat(scaled(k, t)); };
  p.T = options.T;
  p.dt = options.dt;
  p.extrapolate = options.extrapolate;
  table.K = volterra_solve(p);
  fit_resolvent(table, options.fit);
  return table;
}

ResolventTable resolvent_via_bromwich(const Mode& k, const EquilibriumProfile& profile, double beta,
                                      const ResolventOptions& options) {
  if (!(options.gamma0 > 0.0)) throw ValidationError("Bromwich line needs gamma0 > 0");
  if (!(options.step > 0.0) || !(options.omega > options.step)) {
    throw ValidationError("Bromwich quadrature needs 0 < step < omega");
  }
  ResolventTable table;
  table.k = k;
  table.beta = beta;
  table.method = ResolventMethod::bromwich;
  table.gamma0 = options.gamma0;
  table.omega = options.omega;
  table.step = options.step;
  table.t = time_grid(options.T, options.dt);
  const std::size_t nt = table.t.size();
  table.K.assign(nt, cplx(0.0, 0.0));
  if (is_zero(k)) return table;

  const double C = coupling_prefactor(k, beta);
  const double g0 = options.gamma0;
  const double h = options.step;
  const std::size_t half = static_cast<std::size_t>(std::llround(options.omega / h));
  const double omega = h * double(half);
  const std::size_t n = 2 * half + 1;

  LaplaceQuadrature q(k, profile, g0, omega);
  const std::vector<cplx> L = q.transform_line(g0, -omega, h, n);

  // Asymptotics in the basis (lambda+1)^{-m}, m = 2..4, whose inverse transforms are t^{m-1} e^{-t} / (m-1)!.
  const auto jet = profile.ray_jet(k);
  const cplx c2 = -C * jet[0];
  const cplx c3 = -C * 2.0 * jet[1];
  const cplx c4 = -C * 3.0 * jet[2] + C * C * jet[0] * jet[0];
  const cplx d2 = c2, d3 = 2.0 * c2 + c3, d4 = 3.0 * c2 + 3.0 * c3 + c4;

  std::vector<cplx> R(n);
  for (std::size_t m = 0; m < n; ++m) {
    const cplx lambda(g0, -omega + h * double(m));
    const cplx D = 1.0 + C * L[m];
    if (std::abs(D) < 1e-10) {
      std::ostringstream os;
      os << "dispersion function vanishes on the Bromwich line at lambda = " << lambda.real() << " + "
         << lambda.imag() << "i";
      throw StabilityError(os.str());
    }
    const cplx b = 1.0 / (lambda + 1.0);
    const cplx b2 = b * b;
    R[m] = -(C * L[m]) / D - (d2 * b2 + d3 * b2 * b + d4 * b2 * b2);
  }

  std::vector<double> coarse_diff(nt, 0.0);
  parallel_for(nt, [&](std::size_t i) {
    const double t = table.t[i];
    const cplx step = std::polar(1.0, h * t);
    cplx ph;
    cplx fine(0.0, 0.0), coarse(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      if (m % 64 == 0) ph = std::polar(1.0, (-omega + h * double(m)) * t);
      const double w = (m == 0 || m + 1 == n) ? 0.5 : 1.0;
      const cplx term = R[m] * ph;
      fine += w * term;
      if (m % 2 == 0) coarse += ((m == 0 || m + 1 == n) ? 0.5 : 1.0) * term;
      ph *= step;
    }
    const double scale = std::exp(g0 * t) / kTwoPi;
    fine *= h * scale;
    coarse *= 2.0 * h * scale;
    const double e = std::exp(-t);
    table.K[i] = fine + e * (d2 * t + d3 * t * t / 2.0 + d4 * t * t * t / 6.0);
    coarse_diff[i] = std::abs(fine - coarse);
  });

  double tail = std::abs(R.front()) + std::abs(R.back());
  double diff = 0.0;
  for (double v : coarse_diff) diff = std::max(diff, v);
  table.error_estimate = diff + tail * omega / (4.0 * kTwoPi) * std::exp(g0 * options.T);
  fit_resolvent(table, options.fit);
  return table;
}

}  // namespace landau
