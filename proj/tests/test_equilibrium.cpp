#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "landau/equilibrium.hpp"
#include "landau/errors.hpp"

using namespace landau;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Independent oracle: int mu(v) e^{-i eta v} dv by adaptive quadrature on [-L, L].
cplx fourier_by_quadrature(const EquilibriumProfile& p, double eta, double L) {
  auto re = [&](double v) { return p.mu({v, 0, 0}) * std::cos(eta * v); };
  auto im = [&](double v) { return -p.mu({v, 0, 0}) * std::sin(eta * v); };
  return {gauss_kronrod<double, 61>::integrate(re, -L, L, 20, 1e-13),
          gauss_kronrod<double, 61>::integrate(im, -L, L, 20, 1e-13)};
}

}  // namespace

TEST_CASE("profiles are normalized and their transforms match quadrature") {
  const std::vector<std::pair<EquilibriumProfile, double>> cases = {
      {build_maxwellian(1), 12.0}, {build_maxwellian(1, 0.5), 8.0}, {build_two_bump(4.0, 0.5), 14.0},
      {build_two_bump(3.0, 0.3, 0.7), 14.0}};
  for (const auto& [p, L] : cases) {
    CHECK(normalization_defect(p) < 1e-10);
    for (double eta : {0.0, 0.3, 1.0, 2.5}) {
      const cplx q = fourier_by_quadrature(p, eta, L);
      CHECK(std::abs(p.mu_hat({eta, 0, 0}) - q) < 1e-10);
    }
  }
}

TEST_CASE("Lorentzian transform is e^{-theta |eta|}") {
  const EquilibriumProfile p = build_lorentzian(0.7);
  for (double eta : {-2.0, 0.0, 0.5, 3.0}) CHECK(std::abs(p.mu_hat({eta, 0, 0}) - std::exp(-0.7 * std::abs(eta))) < 1e-15);
  CHECK(p.mu({0.0, 0, 0}) == doctest::Approx(1.0 / (kPi * 0.7)));
}

TEST_CASE("gradients match centered differences") {
  for (const auto& p : {build_maxwellian(1), build_two_bump(4.0, 0.5), build_lorentzian(1.0)}) {
    for (double v : {-1.3, 0.2, 2.1}) {
      const double h = 1e-5;
      const double fd = (p.mu({v + h, 0, 0}) - p.mu({v - h, 0, 0})) / (2 * h);
      CHECK(p.grad_mu({v, 0, 0})[0] == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("mu_hat derivatives match finite differences") {
  const EquilibriumProfile p = build_maxwellian(2);
  const Vec3 eta{0.4, -0.9, 0.0};
  const double h = 1e-5;
  for (int a = 0; a < 2; ++a) {
    Vec3 ep = eta, em = eta;
    ep[a] += h;
    em[a] -= h;
    MultiIndex j{0, 0, 0};
    j[a] = 1;
    const cplx fd = (p.mu_hat(ep) - p.mu_hat(em)) / (2 * h);
    CHECK(std::abs(p.mu_hat_derivative(eta, j) - fd) < 1e-9);
  }
}

TEST_CASE("ray jet agrees with the transform along the ray") {
  const EquilibriumProfile p = build_maxwellian(1);
  const Mode k{2, 0, 0};
  const auto jet = p.ray_jet(k);
  const double h = 1e-4;
  auto m = [&](double s) { return p.mu_hat(scaled(k, s)); };
  CHECK(std::abs(jet[0] - m(0.0)) < 1e-14);
  CHECK(std::abs(jet[1] - (m(h) - m(0.0)) / h) < 1e-3);
  CHECK(std::abs(jet[2] - (m(2 * h) - 2.0 * m(h) + m(0.0)) / (h * h)) < 1e-2);
}

TEST_CASE("analytic-decay hypothesis holds for the Lorentzian and its fitted rate is theta") {
  std::vector<double> eta;
  for (double x = 1.0; x <= 20.0; x += 0.5) eta.push_back(x);
  const H1Report r = verify_H1(build_lorentzian(0.8), 0, eta);
  CHECK(r.pass);
  CHECK(r.theta_fit == doctest::Approx(0.8).epsilon(1e-6));
  const H1Report m = verify_H1(build_maxwellian(1), 1, eta);
  CHECK(m.pass);
}

TEST_CASE("tabulated profiles round-trip through the text format") {
  const auto path = (std::filesystem::temp_directory_path() / "landau_profile_test.txt").string();
  const EquilibriumProfile src = build_maxwellian(1);
  save_tabulated_profile(src, path, 12.0, 1201);
  const EquilibriumProfile back = load_tabulated_profile(path);
  for (double eta : {0.0, 0.55, 1.7, 3.05}) CHECK(std::abs(back.mu_hat({eta, 0, 0}) - src.mu_hat({eta, 0, 0})) < 1e-5);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_tabulated_profile("/nonexistent/profile.txt"), ValidationError);
}
