#include <doctest.h>

#include <cmath>
#include <random>

#include "landau/coupling.hpp"
#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/field_solver.hpp"
#include "landau/vlasov.hpp"

using namespace landau;

namespace {

SpectralDensity random_density(int d, int n_x, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  // Smooth mean-free field: low modes with random amplitudes.
  SpectralDensity rho(d, n_x);
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const Mode k = rho.mode_of(i);
    if (norm(k) > 3.0) continue;
    const long j = rho.index_of(negated(k));
    if (long(i) > j) continue;
    const cplx c(amplitude * n01(rng), amplitude * n01(rng));
    rho.modes[i] = c;
    rho.modes[std::size_t(j)] = std::conj(c);
  }
  return rho;
}

}  // namespace

TEST_CASE("coupling series: majorant dominates h and is quadratic near zero") {
  const CouplingSpec s = CouplingSpec::vpme();
  for (double x = -0.5; x <= 0.5; x += 0.05) {
    const double exact = std::exp(x) - 1.0 - x;
    CHECK(h_eval(s, x) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(h_prime_eval(s, x) == doctest::Approx(std::exp(x) - 1.0).epsilon(1e-14));
    CHECK(h_tilde_eval(s, std::abs(x)) >= std::abs(h_eval(s, x)) - 1e-16);
    // e^x - 1 - x <= (e^{1/2} - 3/2) 4 x^2 on [0, 1/2].
    CHECK(h_tilde_eval(s, std::abs(x)) <= 4.0 * (std::exp(0.5) - 1.5) * x * x + 1e-16);
  }
  const SeriesValue v = h_series(s, 0.3);
  CHECK(v.remainder_bound < 1e-15);
}

TEST_CASE("coupling validation and analyticity radius") {
  CouplingSpec bad{"custom", 1.0, {0.0, 1.0, 0.5}, 1.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CouplingSpec geometric{"custom", 1.0, std::vector<double>(40, 1.0), 1.0};
  geometric.h_coeffs[0] = geometric.h_coeffs[1] = 0.0;
  CHECK_NOTHROW(geometric.validate());
  CHECK_THROWS_AS(h_series(geometric, 1.2), RadiusError);
  CHECK(h_eval(geometric, 0.5) == doctest::Approx(0.25 / 0.5).epsilon(1e-10));  // x^2 / (1 - x)
  CHECK_THROWS_AS(CouplingSpec::from_name("maxwell"), ValidationError);
}

TEST_CASE("linear couplings are solved exactly mode by mode") {
  const SpectralDensity rho = random_density(2, 16, 0.1, 3);
  for (const CouplingSpec& spec : {CouplingSpec::vp(), CouplingSpec::screened()}) {
    const PotentialField U = solve_poisson(rho, spec);
    for (std::size_t i = 1; i < rho.size(); ++i) {
      const double denom = spec.beta + norm2(rho.mode_of(i));
      CHECK(std::abs(U.U.modes[i] - rho.modes[i] / denom) < 1e-15);
    }
    CHECK(std::abs(U.U.modes[0]) < 1e-15);
  }
}

TEST_CASE("VPME Newton solve satisfies the coupling equation on the grid") {
  for (int d : {1, 2}) {
    const SpectralDensity rho = random_density(d, 16, 0.05, 11 + d);
    const PotentialField U = solve_poisson(rho, CouplingSpec::vpme());
    CHECK(poisson_residual(U.U, rho, CouplingSpec::vpme()) < 1e-12);
    CHECK(U.newton_iterations <= 8);
    // Quadratic convergence: each residual at most the square of the previous times a modest factor.
    const auto& h = U.residual_history;
    for (std::size_t i = 2; i < h.size(); ++i) {
      if (h[i] < 1e-13) break;
      CHECK(h[i] <= 10.0 * h[i - 1] * h[i - 1] / h[0] + 1e-13);
    }
  }
}

TEST_CASE("field decomposition identity holds for solver output") {
  // ik.E_hat = |k|^2 U_hat and |k|^2 U_hat = |k|^2/(beta+|k|^2) (rho_hat - h(U)_hat).
  const SpectralDensity rho = random_density(1, 32, 0.05, 21);
  const CouplingSpec spec = CouplingSpec::vpme();
  const PotentialField U = solve_poisson(rho, spec);
  const std::vector<SpectralDensity> E = electric_field(U);
  const SpectralDensity hU = h_of_field(U.U, spec);
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const Mode k = rho.mode_of(i);
    const cplx ikE = cplx(0.0, double(k[0])) * E[0].modes[i];
    CHECK(std::abs(ikE - norm2(k) * U.U.modes[i]) < 1e-15);
    const cplx rhs = norm2(k) / (spec.beta + norm2(k)) * (rho.modes[i] - hU.modes[i]);
    CHECK(std::abs(norm2(k) * U.U.modes[i] - rhs) < 1e-12);
  }
}

TEST_CASE("relative Newton tolerance resolves tiny densities") {
  const SpectralDensity rho = random_density(1, 16, 1e-14, 5);
  const PotentialField U = solve_poisson(rho, CouplingSpec::vpme());
  double m = 0.0;
  for (const auto& c : U.U.modes) m = std::max(m, std::abs(c));
  CHECK(m > 0.0);
  CHECK(field_energy(U.U) > 0.0);
}

TEST_CASE("a density with nonzero mean is rejected") {
  SpectralDensity rho = random_density(1, 16, 0.05, 8);
  rho.modes[0] = 0.1;
  CHECK_THROWS_AS(solve_poisson(rho, CouplingSpec::screened()), ValidationError);
}

TEST_CASE("field energy uses the L2 norm of E over the torus") {
  // U = cos(x): E = sin(x), int_0^{2 pi} sin^2 = pi.
  const int n = 16;
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = std::cos(kTwoPi * j / n);
  CHECK(field_energy(field_to_spectral(u, 1, n)) == doctest::Approx(kPi).epsilon(1e-13));
}
