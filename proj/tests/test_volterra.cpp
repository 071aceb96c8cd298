#include <doctest.h>

#include <cmath>

#include "landau/errors.hpp"
#include "landau/volterra.hpp"

using namespace landau;

namespace {

double max_error(const std::vector<cplx>& phi, const std::vector<double>& t, double (*exact)(double)) {
  double e = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) e = std::max(e, std::abs(phi[i] - exact(t[i])));
  return e;
}

double exp_minus(double t) { return std::exp(-t); }
double cosine(double t) { return std::cos(t); }

}  // namespace

TEST_CASE("unit kernel with unit source gives exp(-t)") {
  VolterraProblem p;
  p.convolution_kernel = [](double) { return cplx(1.0, 0.0); };
  p.source = [](double) { return cplx(1.0, 0.0); };
  p.T = 10.0;
  p.dt = 1.0 / 64.0;
  CHECK(max_error(volterra_solve(p), time_grid(p.T, p.dt), exp_minus) < 1e-5);
}

TEST_CASE("kernel t - s with unit source gives cos t, through the general-kernel path") {
  VolterraProblem p;
  p.kernel = [](double t, double s) { return cplx(t - s, 0.0); };
  p.source = [](double) { return cplx(1.0, 0.0); };
  p.T = 10.0;
  p.dt = 1.0 / 64.0;
  CHECK(max_error(volterra_solve(p), time_grid(p.T, p.dt), cosine) < 1e-4);
}

TEST_CASE("trapezoidal product integration is second order and Richardson raises it") {
  auto solve = [](double dt, bool extrapolate) {
    VolterraProblem p;
    p.convolution_kernel = [](double tau) { return cplx(tau, 0.0); };
    p.source = [](double) { return cplx(1.0, 0.0); };
    p.T = 8.0;
    p.dt = dt;
    p.extrapolate = extrapolate;
    return max_error(volterra_solve(p), time_grid(p.T, p.dt), cosine);
  };
  const double e1 = solve(1.0 / 16.0, false), e2 = solve(1.0 / 32.0, false);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  const double r1 = solve(1.0 / 16.0, true), r2 = solve(1.0 / 32.0, true);
  CHECK(r1 / r2 > 12.0);
  CHECK(r2 < 1e-7);
}

TEST_CASE("complex kernels are handled") {
  // phi + i int_0^t phi = 1 gives phi = e^{-i t}.
  VolterraProblem p;
  p.convolution_kernel = [](double) { return cplx(0.0, 1.0); };
  p.source = [](double) { return cplx(1.0, 0.0); };
  p.T = 5.0;
  p.dt = 1.0 / 128.0;
  p.extrapolate = true;
  const auto phi = volterra_solve(p);
  const auto t = time_grid(p.T, p.dt);
  for (std::size_t i = 0; i < t.size(); i += 64) CHECK(std::abs(phi[i] - std::exp(cplx(0.0, -t[i]))) < 1e-9);
}

TEST_CASE("Gregory weights integrate low-degree polynomials exactly") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 9u, 10u, 17u, 40u}) {
    const auto w = gregory_weights(n);
    REQUIRE(w.size() == n + 1);
    const int degree = n < 9 ? int(std::min<std::size_t>(n, 5)) : 5;
    for (int p = 0; p <= degree; ++p) {
      double s = 0.0;
      for (std::size_t j = 0; j <= n; ++j) s += w[j] * std::pow(double(j), p);
      const double exact = std::pow(double(n), p + 1) / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample convolution converges at high order against a closed form") {
  // int_0^t e^{-(t-s)} sin(s) ds = (sin t - cos t + e^{-t}) / 2.
  auto err = [](double dt) {
    const auto t = time_grid(6.0, dt);
    std::vector<cplx> K(t.size()), f(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      K[i] = std::exp(-t[i]);
      f[i] = std::sin(t[i]);
    }
    const auto y = convolve_samples(K, f, dt);
    double e = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
      e = std::max(e, std::abs(y[i] - 0.5 * (std::sin(t[i]) - std::cos(t[i]) + std::exp(-t[i]))));
    return e;
  };
  const double e1 = err(1.0 / 8.0), e2 = err(1.0 / 16.0);
  CHECK(e2 < 1e-8);
  CHECK(e1 / e2 > 40.0);
}

TEST_CASE("time grid and step count validate the horizon") {
  CHECK(step_count(1.0, 0.25) == 4);
  CHECK(time_grid(1.0, 0.25).back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(step_count(1.0, 0.3), ValidationError);
  CHECK_THROWS_AS(step_count(1.0, -0.1), ValidationError);
}
