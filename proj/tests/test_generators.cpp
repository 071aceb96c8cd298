#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "landau/errors.hpp"
#include "landau/generators.hpp"

using namespace landau;

namespace {

PhaseSpaceState cos_gaussian(const TorusGrid& g) {
  PhaseSpaceState f(g);
  for (std::size_t ix = 0; ix < g.nx_total(); ++ix) {
    const double c = std::cos(g.position(ix)[0]);
    for (std::size_t iv = 0; iv < g.nv_total(); ++iv) {
      const double v = g.velocity(iv)[0];
      f.at(ix, iv) = c * std::exp(-v * v / 2.0);
    }
  }
  return f;
}

// G of cos(x) e^{-v^2/2}: g_hat = pi sqrt(2 pi) e^{-eta^2/2} at k = +-1 and d_eta g_hat = -eta g_hat.
double cos_gaussian_G(const GevreyParams& p, int j_max) {
  auto integrand = [&](double eta) {
    const double B = std::sqrt(2.0 + eta * eta);
    const double amp2 = kPi * kPi * kTwoPi * std::exp(-eta * eta);
    const double jet = j_max >= 1 ? 1.0 + eta * eta : 1.0;
    return std::exp(2.0 * p.z * std::pow(B, p.gamma)) * std::pow(B, 2.0 * p.sigma) * amp2 * jet;
  };
  boost::math::quadrature::tanh_sinh<double> q;
  return 2.0 * q.integrate(integrand, -30.0, 30.0);
}

SpectralDensity random_density(int n_x, std::uint32_t seed) {
  SpectralDensity rho(1, n_x, 0.0);
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::size_t i = 1; i < rho.size(); ++i) rho.modes[i] = cplx(n(rng), n(rng));
  rho.modes[0] = 0.0;
  return rho;
}

}  // namespace

TEST_CASE("G of a Gaussian wave matches the analytic weighted integral") {
  const TorusGrid g{1, 8, 128, 10.0};
  const PhaseSpaceState f = cos_gaussian(g);
  for (double gamma : {0.5, 1.0}) {
    GevreyParams p;
    p.z = 0.5;
    p.gamma = gamma;
    p.sigma = 2.0;
    for (int j : {0, 1}) {
      CHECK(gen_G(f, p, j) == doctest::Approx(cos_gaussian_G(p, j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("F agrees with a brute-force supremum over lattice modes") {
  const SpectralDensity rho = random_density(32, 7);
  GevreyParams p;
  p.z = 0.3;
  p.gamma = 0.5;
  p.sigma = 4.0;
  p.alpha = 0.25;
  for (double t : {0.0, 0.7, 3.0}) {
    double best = 0.0;
    for (std::size_t i = 1; i < rho.size(); ++i) {
      const double k = std::abs(double(rho.mode_of(i)[0]));
      const double B = std::sqrt(1.0 + k * k + k * k * t * t);
      const double v = std::exp(p.z * std::pow(B, p.gamma)) * std::pow(B, p.sigma) * std::abs(rho.modes[i]) /
                       std::pow(k, p.alpha);
      best = std::max(best, v);
    }
    const FValue r = gen_F_report(rho, t, p);
    CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
    CHECK(r.excluded == 0);
    CHECK(r.arg_k[0] != 0);
  }
}

TEST_CASE("F excludes modes beyond the band and fails when none remain") {
  const SpectralDensity rho = random_density(16, 3);
  GevreyParams p;
  const FValue r = gen_F_report(rho, 2.0, p, 4.5);
  // Only |k| <= 2 lies inside the band at t = 2.
  CHECK(r.excluded == rho.size() - 1 - 4);
  CHECK(std::abs(r.arg_k[0]) <= 2);
  CHECK_THROWS_AS(gen_F(rho, 10.0, p, 1.0), DomainError);
}

TEST_CASE("F rejects a density with nonzero mean") {
  SpectralDensity rho = random_density(16, 5);
  rho.modes[0] = 0.5;
  CHECK_THROWS_AS(gen_F(rho, 0.0, GevreyParams{}), ValidationError);
}

TEST_CASE("generators report saturation instead of overflowing") {
  const SpectralDensity rho = random_density(16, 9);
  GevreyParams p;
  p.z = 50.0;
  p.gamma = 1.0;
  CHECK_THROWS_AS(gen_F(rho, 20.0, p), SaturationError);
  const TorusGrid g{1, 8, 64, 2.0};
  CHECK_THROWS_AS(gen_G(cos_gaussian(g), p, 0), SaturationError);
}

TEST_CASE("multi-indices enumerate |j| <= order") {
  CHECK(multi_indices(1, 1).size() == 2);
  CHECK(multi_indices(2, 1).size() == 3);
  CHECK(multi_indices(3, 1).size() == 4);
  CHECK(multi_indices(3, 2).size() == 10);
  for (const auto& j : multi_indices(2, 3)) {
    CHECK(j[0] + j[1] <= 3);
    CHECK(j[2] == 0);
  }
}

TEST_CASE("default eta band is the Nyquist frequency of the velocity grid") {
  const TorusGrid g{1, 8, 128, 8.0};
  CHECK(default_eta_band(g) == doctest::Approx(g.eta_max()));
}
