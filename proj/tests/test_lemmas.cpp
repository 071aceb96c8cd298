#include <doctest.h>

#include <cmath>

#include "landau/fft.hpp"
#include "landau/generators.hpp"
#include "landau/lemmas.hpp"

using namespace landau;

namespace {

GevreyParams suite_params() { return GevreyParams{0.5, 0.5, 4.0, 0.25}; }

}  // namespace

TEST_CASE("random fields have F equal to the largest drawn coefficient") {
  const GevreyParams p = suite_params();
  for (double t : {0.0, 3.0}) {
    const SpectralDensity phi = random_field(1, 32, t, p, 11);
    const double F = gen_F_unbanded(phi, t, p);
    CHECK(F > 0.0);
    CHECK(F <= 1.0 + 1e-12);
    CHECK(std::abs(phi.modes[0]) == 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const int k = std::abs(phi.mode_of(i)[0]);
      if (k >= 8) CHECK(std::abs(phi.modes[i]) == 0.0);
      CHECK(std::abs(phi[{-phi.mode_of(i)[0], 0, 0}] - std::conj(phi.modes[i])) < 1e-15);
    }
  }
}

TEST_CASE("field product equals the discrete convolution of coefficients") {
  // With c_k = int phi e^{-ikx} dx the product has coefficients sum_l a_l b_{k-l} / (2 pi).
  const GevreyParams p = suite_params();
  const SpectralDensity a = random_field(1, 32, 0.0, p, 1), b = random_field(1, 32, 0.0, p, 2);
  const SpectralDensity c = field_product(a, b);
  double worst = 0.0, scale = 0.0;
  for (int k = -16; k < 16; ++k) {
    cplx s(0.0, 0.0);
    for (int l = -16; l < 16; ++l) {
      const int m = k - l;
      if (m < -16 || m >= 16) continue;
      s += a[{l, 0, 0}] * b[{m, 0, 0}];
    }
    s /= kTwoPi;
    worst = std::max(worst, std::abs(c[{k, 0, 0}] - s));
    scale = std::max(scale, std::abs(s));
  }
  CHECK(worst < 1e-12 * scale);
}

TEST_CASE("algebra property holds with a stable constant and the fraction bound") {
  const AlgebraReport r = verify_algebra_property(suite_params(), {0.0, 2.0, 5.0}, 100, 99);
  CHECK(r.stable);
  CHECK(r.claim_stable);
  CHECK(r.C_star > 0.0);
  CHECK(r.fraction_bound == doctest::Approx(std::sqrt(3.0)));
  CHECK(r.fraction_max <= r.fraction_bound);
  CHECK(r.fraction_holds);
  CHECK(r.pass);
}

TEST_CASE("F is controlled by the square root of G on Gaussian waves") {
  GevreyParams p = suite_params();
  const FGReport r = verify_lemma_F_le_sqrtG(p, TorusGrid{1, 32, 256, 8.0}, {0.0, 2.0, 5.0});
  CHECK(r.samples > 0);
  CHECK(r.stable);
  CHECK(r.pass);
  CHECK(r.ratio > 0.0);
}

TEST_CASE("time integrals stay bounded for sigma = 4") {
  std::vector<double> t;
  for (int i = 1; i <= 60; ++i) t.push_back(i * 2.0);
  const IntegralReport r = verify_integral_inequalities(1.0, 1.0, 0.5, 4.0, t);
  CHECK(r.polynomial.bounded);
  CHECK(r.gevrey.bounded);
}

TEST_CASE("sigma = 2 polynomial ratio converges to 4 / theta") {
  // For sigma = 2 the weight <s>^{-1} varies slowly and the convolution tends to int_0^inf e^{-theta u / 4} du.
  std::vector<double> t;
  for (int i = 1; i <= 40; ++i) t.push_back(i * 50.0);
  const double theta = 1.0;
  const IntegralReport r = verify_integral_inequalities(theta, 1.0, 0.5, 2.0, t);
  CHECK(r.polynomial_ratio.back() == doctest::Approx(4.0 / theta).epsilon(0.02));
}

TEST_CASE("composition bound holds for the screened nonlinearity") {
  const CompositionReport r = verify_composition(suite_params(), CouplingSpec::vpme(), 0.14, 50, 5);
  CHECK(r.C == 1.0);
  CHECK(r.samples == 50);
  CHECK(r.worst_margin <= 1.0);
  CHECK(r.holds);
}

TEST_CASE("potential is controlled by its Laplacian in F") {
  CHECK(verify_F_U_le_F_laplacian(suite_params(), CouplingSpec::vp(), 20, 3));
  CHECK(verify_F_U_le_F_laplacian(suite_params(), CouplingSpec::vpme(), 20, 4));
}

TEST_CASE("small data scale like the square root of G") {
  const SqrtEpsReport r =
      verify_sqrt_eps(suite_params(), 0.5, CouplingSpec::vpme(), {1e-6, 1e-5, 1e-4, 1e-3}, TorusGrid{1, 32, 256, 8.0});
  CHECK(r.slope_rho == doctest::Approx(0.5).epsilon(0.02));
  CHECK(r.slope_laplacian == doctest::Approx(0.5).epsilon(0.02));
  CHECK(r.pass);
}
