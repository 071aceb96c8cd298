#include <doctest.h>

#include <cmath>
#include <random>

#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/gevrey.hpp"
#include "landau/transport.hpp"

using namespace landau;

namespace {

PhaseSpaceState gaussian_wave(const TorusGrid& g, int k, double s, double u = 0.0) {
  PhaseSpaceState f(g);
  for (std::size_t ix = 0; ix < g.nx_total(); ++ix) {
    const double c = std::cos(k * g.position(ix)[0]);
    for (std::size_t iv = 0; iv < g.nv_total(); ++iv) {
      const double v = g.velocity(iv)[0] - u;
      f.at(ix, iv) = c * std::exp(-v * v / (2.0 * s * s));
    }
  }
  return f;
}

}  // namespace

TEST_CASE("grid index maps are mutually inverse") {
  for (int d : {1, 2, 3}) {
    TorusGrid g{d, 8, 8, 4.0};
    for (std::size_t i = 0; i < g.nx_total(); ++i) CHECK(g.index_of(g.mode_of(i)) == long(i));
  }
  TorusGrid g{1, 8, 16, 4.0};
  CHECK(g.index_of({5, 0, 0}) == -1);
  CHECK(g.eta(1) == doctest::Approx(kPi / 4.0));
  CHECK(g.eta(15) == doctest::Approx(-kPi / 4.0));
}

TEST_CASE("grid validation rejects malformed sizes") {
  CHECK_THROWS_AS((TorusGrid{4, 8, 8, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((TorusGrid{1, 7, 8, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((TorusGrid{1, 8, 8, -1.0}.validate()), ValidationError);
}

TEST_CASE("forward transform matches the analytic Fourier integral of a Gaussian wave") {
  // int cos(x) e^{-ikx} dx = pi for k = +-1; int e^{-v^2/2} e^{-i eta v} dv = sqrt(2 pi) e^{-eta^2/2}.
  TorusGrid g{1, 16, 128, 10.0};
  const SpectralArray s = forward_transform(gaussian_wave(g, 1, 1.0));
  double worst = 0.0;
  for (std::size_t ik = 0; ik < g.nx_total(); ++ik) {
    const int k = g.mode_of(ik)[0];
    for (std::size_t ip = 0; ip < g.nv_total(); ++ip) {
      const double eta = g.frequency(ip)[0];
      const double expect = std::abs(k) == 1 ? kPi * std::sqrt(kTwoPi) * std::exp(-eta * eta / 2.0) : 0.0;
      worst = std::max(worst, std::abs(s.at(ik, ip) - expect));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("transforms round-trip to machine precision on random data") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (int d : {1, 2}) {
    TorusGrid g{d, 8, 16, 3.0};
    PhaseSpaceState f(g);
    for (auto& v : f.values) v = cplx(n01(rng), n01(rng));
    const PhaseSpaceState back = inverse_transform(forward_transform(f));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("torus field transforms round-trip and use the integral normalization") {
  const int n = 32;
  std::vector<double> phi(n);
  for (int j = 0; j < n; ++j) phi[j] = 1.0 + 2.0 * std::cos(3.0 * kTwoPi * j / n);
  const SpectralDensity c = field_to_spectral(phi, 1, n);
  CHECK(std::abs(c[{0, 0, 0}] - kTwoPi) < 1e-12);
  CHECK(std::abs(c[{3, 0, 0}] - kTwoPi) < 1e-12);
  const std::vector<double> back = field_to_physical(c);
  for (int j = 0; j < n; ++j) CHECK(back[j] == doctest::Approx(phi[j]).epsilon(1e-13));
}

TEST_CASE("Gevrey weight is computed in log space and saturates instead of overflowing") {
  GevreyParams p{1.0, 1.0, 4.0, 0.25};
  const GevreyWeight w = gevrey_weight(1.0, 2.0, p);
  const double b = std::sqrt(6.0);
  CHECK(w.value == doctest::Approx(std::exp(b) * std::pow(b, 4.0)));
  CHECK_FALSE(w.saturated);
  const GevreyWeight big = gevrey_weight(1.0, 1e4, p);
  CHECK(big.saturated);
  CHECK(std::isinf(big.value));
  CHECK(std::isfinite(big.log_value));
  CHECK(big.log_value == doctest::Approx(std::sqrt(1.0 + 1.0 + 1e8) + 4.0 * std::log(std::sqrt(1.0 + 1.0 + 1e8))));
}

TEST_CASE("Gevrey weight is monotone in the bracket") {
  GevreyParams p{0.5, 0.5, 4.0, 0.25};
  double prev = -1.0;
  for (double eta = 0.0; eta < 100.0; eta += 0.5) {
    const double lw = gevrey_weight(1.0, eta, p).log_value;
    CHECK(lw > prev);
    prev = lw;
  }
}

TEST_CASE("Gevrey parameter validation names the violated inequality") {
  GevreyParams p{0.5, 0.5, 2.0, 0.25};
  CHECK_THROWS_WITH_AS(p.validate(1), doctest::Contains("sigma > 3"), ValidationError);
  p = {0.5, 1.5, 4.0, 0.25};
  CHECK_THROWS_AS(p.validate(1), ValidationError);
  p = {0.5, 0.5, 4.0, 0.75};
  CHECK_THROWS_AS(p.validate(1), ValidationError);
}

TEST_CASE("free-transport pull-back is reversible and keeps the L2 norm") {
  TorusGrid g{1, 16, 64, 6.0};
  PhaseSpaceState f = gaussian_wave(g, 2, 0.8, 0.3);
  f.time = 3.7;
  const PhaseSpaceState gfree = free_transport_pullback(f, PullbackDirection::lab_to_free);
  CHECK(gfree.frame == Frame::free_transport);
  CHECK(gfree.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-13));
  const PhaseSpaceState back = free_transport_pullback(gfree, PullbackDirection::free_to_lab);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("free streaming forward then backward returns the initial state") {
  TorusGrid g{1, 16, 64, 6.0};
  PhaseSpaceState f = gaussian_wave(g, 1, 1.0);
  const PhaseSpaceState f0 = f;
  free_transport_step(f, 2.5);
  CHECK(f.time == doctest::Approx(2.5));
  free_transport_step(f, -2.5);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(f.values[i] - f0.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("density of a free-transport state samples g_hat along eta = k t") {
  // Free streaming of cos(x) e^{-v^2/2}: rho_hat_1(t) = pi sqrt(2 pi) e^{-t^2/2}.
  TorusGrid g{1, 16, 256, 10.0};
  PhaseSpaceState f = gaussian_wave(g, 1, 1.0);
  free_transport_step(f, 1.5);
  const SpectralDensity rho = density_of(f);
  CHECK(std::abs(rho[{1, 0, 0}]) == doctest::Approx(kPi * std::sqrt(kTwoPi) * std::exp(-1.125)).epsilon(1e-10));
  const PhaseSpaceState gfree = free_transport_pullback(f, PullbackDirection::lab_to_free);
  CHECK(std::abs(density_of(gfree)[{1, 0, 0}] - rho[{1, 0, 0}]) < 1e-12);
  const cplx off_grid = spectral_value(gfree, {1, 0, 0}, {0.37, 0.0, 0.0});
  CHECK(std::abs(off_grid) == doctest::Approx(kPi * std::sqrt(kTwoPi) * std::exp(-0.37 * 0.37 / 2.0)).epsilon(1e-8));
}

TEST_CASE("parallel loops give thread-count independent results") {
  std::vector<double> a(1000), b(1000);
  set_thread_count(1);
  parallel_for(a.size(), [&](std::size_t i) { a[i] = std::sin(double(i)); });
  set_thread_count(4);
  parallel_for(b.size(), [&](std::size_t i) { b[i] = std::sin(double(i)); });
  set_thread_count(1);
  CHECK(a == b);
}
