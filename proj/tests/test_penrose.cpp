#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "landau/errors.hpp"
#include "landau/penrose.hpp"

using namespace landau;

TEST_CASE("Laplace quadrature matches the closed form for the Lorentzian") {
  // mu_hat(eta) = e^{-|eta|}: int_0^inf t e^{-|k| t} e^{-lambda t} dt = 1 / (lambda + |k|)^2.
  const EquilibriumProfile p = build_lorentzian(1.0);
  for (int k : {1, 3}) {
    const LaplaceQuadrature q({k, 0, 0}, p, 0.0, 50.0);
    for (cplx lambda : {cplx(0.0, 0.0), cplx(0.3, 2.0), cplx(0.0, -7.5), cplx(1.0, 40.0)}) {
      const cplx expect = 1.0 / ((lambda + double(k)) * (lambda + double(k)));
      // Truncation at T = 30 / |k| leaves a tail of about 30 e^{-30}.
      CHECK(std::abs(q.transform(lambda) - expect) < 1e-11);
    }
    const auto line = q.transform_line(0.1, -3.0, 0.25, 25);
    for (std::size_t m = 0; m < line.size(); ++m) {
      const cplx lambda(0.1, -3.0 + 0.25 * double(m));
      CHECK(std::abs(line[m] - q.transform(lambda)) < 1e-12);
    }
  }
}

TEST_CASE("Laplace quadrature matches adaptive quadrature for the Maxwellian") {
  const EquilibriumProfile p = build_maxwellian(1);
  const LaplaceQuadrature q({2, 0, 0}, p, 0.0, 10.0);
  const cplx lambda(0.2, 1.3);
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double t) { return (t * std::exp(-2.0 * t * t) * std::exp(-lambda * t)).real(); };
  auto im = [&](double t) { return (t * std::exp(-2.0 * t * t) * std::exp(-lambda * t)).imag(); };
  const cplx expect(gauss_kronrod<double, 61>::integrate(re, 0.0, 12.0, 15, 1e-14),
                    gauss_kronrod<double, 61>::integrate(im, 0.0, 12.0, 15, 1e-14));
  CHECK(std::abs(q.transform(lambda) - expect) < 1e-13);
}

TEST_CASE("dispersion function tends to one far from the origin and rejects the excluded half-plane") {
  const EquilibriumProfile p = build_maxwellian(1);
  CHECK(std::abs(dispersion_value({1, 0, 0}, cplx(0.0, 500.0), p, 1.0) - 1.0) < 1e-4);
  CHECK(coupling_prefactor({1, 0, 0}, 1.0) == doctest::Approx(0.5));
  CHECK(coupling_prefactor({0, 0, 0}, 1.0) == 0.0);
  CHECK_THROWS_AS(dispersion_value({1, 0, 0}, cplx(-5.0, 0.0), build_lorentzian(1.0), 0.0), DomainError);
}

TEST_CASE("Maxwellian is Penrose stable with a positive margin") {
  for (double beta : {0.0, 1.0}) {
    const PenroseReport r = penrose_margin(build_maxwellian(1), beta, 8);
    CHECK(r.winding_ok);
    CHECK(r.kappa0 > 0.5);
    CHECK(r.k_scanned.size() == 16);
    for (int w : r.winding) CHECK(w == 0);
    CHECK(r.tail_bound < 0.05);
  }
}

TEST_CASE("screening increases the Maxwellian margin") {
  const double k0 = penrose_margin(build_maxwellian(1), 0.0, 4).kappa0;
  const double k1 = penrose_margin(build_maxwellian(1), 1.0, 4).kappa0;
  CHECK(k1 > k0);
}

TEST_CASE("a narrow two-bump profile is detected as unstable") {
  const EquilibriumProfile p = build_two_bump(1.0, 0.5, 0.25);
  CHECK(winding_check({1, 0, 0}, p, 0.0) >= 1);
  const PenroseReport r = penrose_margin(p, 0.0, 4);
  CHECK_FALSE(r.winding_ok);
  CHECK(r.kappa0 == 0.0);
  CHECK_FALSE(r.unstable_modes.empty());
}

TEST_CASE("lattice shells enumerate modes by norm") {
  CHECK(lattice_shell(1, 3).size() == 6);
  for (const Mode& k : lattice_shell(2, 2)) {
    CHECK(norm(k) >= 1.0);
    CHECK(norm(k) <= 2.0 + 1e-12);
  }
}
