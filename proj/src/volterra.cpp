#include "landau/volterra.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

std::size_t step_count(double T, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (!(T >= 0.0)) throw ValidationError("final time must be >= 0");
  double n = T / dt;
  double r = std::round(n);
  if (std::abs(n - r) > 1e-9 * std::max(1.0, n)) {
    std::ostringstream os;
    os << "final time " << T << " is not an integer multiple of dt = " << dt;
    throw ValidationError(os.str());
  }
  return static_cast<std::size_t>(r);
}

std::vector<double> time_grid(double T, double dt) {
  std::size_t n = step_count(T, dt);
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = dt * double(i);
  return t;
}

namespace {

std::vector<cplx> trapezoid_solve(const VolterraProblem& p, double dt) {
  const std::size_t n = step_count(p.T, dt);
  std::vector<cplx> phi(n + 1);
  const bool conv = static_cast<bool>(p.convolution_kernel);
  if (!conv && !p.kernel) throw ValidationError("Volterra problem needs a kernel");
  if (!p.source) throw ValidationError("Volterra problem needs a source");
  std::vector<cplx> kc;
  if (conv) {
    kc.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) kc[i] = p.convolution_kernel(dt * double(i));
  }
  auto kern = [&](std::size_t i, std::size_t j) {
    return conv ? kc[i - j] : p.kernel(dt * double(i), dt * double(j));
  };
  phi[0] = p.source(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    cplx mem = 0.5 * kern(i, 0) * phi[0];
    for (std::size_t j = 1; j < i; ++j) mem += kern(i, j) * phi[j];
    const cplx diag = 1.0 + 0.5 * dt * kern(i, i);
    if (std::abs(diag) < 1e-12) {
      std::ostringstream os;
      os << "Volterra step-size error: 1 + dt kappa(t,t)/2 vanishes at t = " << dt * double(i);
      throw NumericalError(os.str());
    }
    phi[i] = (p.source(dt * double(i)) - dt * mem) / diag;
  }
  return phi;
}

}  // namespace

std::vector<cplx> volterra_solve(const VolterraProblem& problem) {
  std::vector<cplx> coarse = trapezoid_solve(problem, problem.dt);
  if (!problem.extrapolate) return coarse;
  std::vector<cplx> fine = trapezoid_solve(problem, 0.5 * problem.dt);
  for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
  return coarse;
}

std::vector<double> gregory_weights(std::size_t n) {
  if (n == 0) return {0.0};
  if (n <= 8) {
    // Interpolatory weights exact for polynomials of degree n on 0..n.
    const std::size_t m = n + 1;
    std::vector<long double> a(m * m), b(m);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t j = 0; j < m; ++j) a[p * m + j] = std::pow((long double)j, (long double)p);
      b[p] = std::pow((long double)n, (long double)(p + 1)) / (long double)(p + 1);
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < m; ++r)
        if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
      for (std::size_t j = 0; j < m; ++j) std::swap(a[c * m + j], a[piv * m + j]);
      std::swap(b[c], b[piv]);
      for (std::size_t r = c + 1; r < m; ++r) {
        const long double f = a[r * m + c] / a[c * m + c];
        for (std::size_t j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
        b[r] -= f * b[c];
      }
    }
    std::vector<double> w(m);
    for (std::size_t c = m; c-- > 0;) {
      long double s = b[c];
      for (std::size_t j = c + 1; j < m; ++j) s -= a[c * m + j] * (long double)w[j];
      w[c] = double(s / a[c * m + c]);
    }
    return w;
  }
  std::vector<double> w(n + 1, 1.0);
  const double ends[5] = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0, 793.0 / 720.0, 157.0 / 160.0};
  for (int i = 0; i < 5; ++i) {
    w[i] = ends[i];
    w[n - i] = ends[i];
  }
  return w;
}

std::vector<cplx> convolve_samples(const std::vector<cplx>& K, const std::vector<cplx>& f, double dt) {
  if (K.size() != f.size()) throw ValidationError("convolution samples must have equal length");
  const std::size_t N = K.size();
  std::vector<cplx> y(N, cplx(0.0, 0.0));
  // The first steps have too few samples for a high-order rule, so both factors are replaced by
  // their interpolants through the first `deg + 1` samples and the product is integrated by Gauss-Legendre.
  constexpr std::size_t deg = 6;
  const std::size_t head = N > deg ? 5 : 0;
  if (head > 0) {
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    auto interp = [&](const std::vector<cplx>& v, double x) {
      cplx s(0.0, 0.0);
      for (std::size_t j = 0; j <= deg; ++j) {
        double l = 1.0;
        for (std::size_t m = 0; m <= deg; ++m)
          if (m != j) l *= (x - double(m)) / (double(j) - double(m));
        s += l * v[j];
      }
      return s;
    };
    for (std::size_t n = 1; n <= head; ++n) {
      cplx s(0.0, 0.0);
      for (std::size_t cell = 0; cell < n; ++cell)
        for (int q = 0; q < 5; ++q) {
          const double x = double(cell) + 0.5 * (gx[q] + 1.0);
          s += 0.5 * gw[q] * interp(K, double(n) - x) * interp(f, x);
        }
      y[n] = s * dt;
    }
  }
  for (std::size_t n = head + 1; n < N; ++n) {
    std::vector<double> w = gregory_weights(n);
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j <= n; ++j) s += w[j] * K[n - j] * f[j];
    y[n] = s * dt;
  }
  return y;
}

}  // namespace landau
