#include "landau/field_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/fft.hpp"

namespace landau {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

// Physical-space helper bound to one lattice.
struct Lattice {
  int d;
  int n_x;
  std::vector<double> k2;

  Lattice(int d_, int n_x_) : d(d_), n_x(n_x_) {
    SpectralDensity probe(d, n_x);
    k2.resize(probe.size());
    for (std::size_t i = 0; i < probe.size(); ++i) k2[i] = norm2(probe.mode_of(i));
  }
  std::vector<double> to_phys(const SpectralDensity& s) const { return field_to_physical(s); }
  SpectralDensity to_spec(const std::vector<double>& v) const { return field_to_spectral(v, d, n_x); }
  // (-Delta + shift) applied spectrally.
  std::vector<double> helmholtz(const std::vector<double>& u, double shift) const {
    SpectralDensity s = to_spec(u);
    for (std::size_t i = 0; i < s.size(); ++i) s.modes[i] *= (k2[i] + shift);
    return to_phys(s);
  }
};

struct NewtonProblem {
  const Lattice& lat;
  const CouplingSpec& spec;
  std::vector<double> rho;  // physical
  double shift = 0.0;       // constant added to U inside h (the mean unknown when beta = 0)
  bool mean_free = false;   // restrict to mean-free U and project the equation
};

std::vector<double> project(const std::vector<double>& v, bool mean_free) {
  if (!mean_free) return v;
  std::vector<double> out = v;
  double m = mean(v);
  for (auto& x : out) x -= m;
  return out;
}

std::vector<double> residual_of(const NewtonProblem& p, const std::vector<double>& U) {
  std::vector<double> r = p.lat.helmholtz(U, p.spec.beta);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += h_eval(p.spec, U[i] + p.shift) + p.spec.beta * p.shift - p.rho[i];
  return project(r, p.mean_free);
}

// Preconditioned conjugate gradients for (-Delta + beta + h'(U)) x = b, SPD case.
std::vector<double> solve_jacobian(const NewtonProblem& p, const std::vector<double>& hp, const std::vector<double>& b) {
  const std::size_t n = b.size();
  const double cbar = mean(hp);
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y = p.lat.helmholtz(x, p.spec.beta);
    for (std::size_t i = 0; i < n; ++i) y[i] += hp[i] * x[i];
    return project(y, p.mean_free);
  };
  auto precond = [&](const std::vector<double>& r) {
    SpectralDensity s = p.lat.to_spec(r);
    for (std::size_t i = 0; i < s.size(); ++i) {
      double den = p.lat.k2[i] + p.spec.beta + cbar;
      s.modes[i] = (p.mean_free && i == 0) || den <= 0.0 ? cplx(0.0, 0.0) : s.modes[i] / den;
    }
    return p.lat.to_phys(s);
  };
  auto dotp = [&](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * c[i];
    return s;
  };
  std::vector<double> x(n, 0.0), r = project(b, p.mean_free), z = precond(r), q = z;
  double rz = dotp(r, z);
  const double bnorm = std::sqrt(dotp(r, r));
  if (bnorm == 0.0) return x;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> Aq = apply(q);
    double qAq = dotp(q, Aq);
    if (!(qAq > 0.0)) throw ConvergenceError("Newton Jacobian is not positive definite; no small solution branch");
    double a = rz / qAq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += a * q[i];
      r[i] -= a * Aq[i];
    }
    if (std::sqrt(dotp(r, r)) <= 1e-15 * bnorm) break;
    z = precond(r);
    double rz_new = dotp(r, z);
    double bcoef = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) q[i] = z[i] + bcoef * q[i];
  }
  return x;
}

void check_radius(const CouplingSpec& spec, const std::vector<double>& U, double shift) {
  if (!std::isfinite(spec.radius)) return;
  double m = 0.0;
  for (double u : U) m = std::max(m, std::abs(u + shift));
  if (m >= 0.9 * spec.radius) {
    std::ostringstream os;
    os << "potential max-norm " << m << " approaches the analyticity radius R = " << spec.radius << " of h";
    throw RadiusError(os.str());
  }
}

// Damped Newton from the given start; returns iteration count.
int newton(const NewtonProblem& p, std::vector<double>& U, double tol, std::vector<double>& history) {
  std::vector<double> r = residual_of(p, U);
  double rn = max_abs(r);
  history.push_back(rn);
  int it = 0;
  for (; it < 60 && rn > tol; ++it) {
    std::vector<double> hp(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) hp[i] = h_prime_eval(p.spec, U[i] + p.shift);
    std::vector<double> minus_r(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) minus_r[i] = -r[i];
    std::vector<double> delta = solve_jacobian(p, hp, minus_r);
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      std::vector<double> trial(U.size());
      for (std::size_t i = 0; i < U.size(); ++i) trial[i] = U[i] + step * delta[i];
      check_radius(p.spec, trial, p.shift);
      std::vector<double> rt = residual_of(p, trial);
      double rtn = max_abs(rt);
      if (rtn <= (1.0 - 1e-4 * step) * rn || rtn <= tol) {
        U.swap(trial);
        r.swap(rt);
        rn = rtn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    history.push_back(rn);
    if (!accepted) {
      // Round-off floor: accept if the residual cannot be reduced further and is already tiny.
      if (rn <= 1e3 * tol) break;
      std::ostringstream os;
      os << "Newton iteration stopped contracting at residual " << rn << "; no small solution found";
      throw ConvergenceError(os.str());
    }
  }
  if (rn > 1e3 * tol) {
    std::ostringstream os;
    os << "Newton iteration did not reach tolerance " << tol << " (residual " << rn << ")";
    throw ConvergenceError(os.str());
  }
  return it;
}

}  // namespace

SpectralDensity h_of_field(const SpectralDensity& U, const CouplingSpec& spec) {
  std::vector<double> u = field_to_physical(U);
  for (auto& x : u) x = h_eval(spec, x);
  return field_to_spectral(u, U.d, U.n_x, U.t);
}

double poisson_residual(const SpectralDensity& U, const SpectralDensity& rho, const CouplingSpec& spec) {
  Lattice lat(U.d, U.n_x);
  std::vector<double> u = field_to_physical(U);
  std::vector<double> r = lat.helmholtz(u, spec.beta);
  std::vector<double> rp = field_to_physical(rho);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += (spec.has_h() ? h_eval(spec, u[i]) : 0.0) - rp[i];
  return max_abs(r);
}

PotentialField solve_poisson(const SpectralDensity& rho, const CouplingSpec& spec, double tol) {
  spec.validate();
  if (!(tol > 0.0)) throw ValidationError("Poisson tolerance must be positive");
  double scale = 0.0;
  for (const auto& z : rho.modes) scale = std::max(scale, std::abs(z));
  if (std::abs(rho.modes[0]) > 1e-9 * scale + 1e-13)
    throw ValidationError("solve_poisson requires a mean-free density (rho_hat_0 = 0)");

  PotentialField out;
  out.U = SpectralDensity(rho.d, rho.n_x, rho.t);
  SpectralDensity rho0 = rho;
  rho0.modes[0] = 0.0;
  Lattice lat(rho.d, rho.n_x);

  if (!spec.has_h()) {
    for (std::size_t i = 1; i < rho.size(); ++i) out.U.modes[i] = rho0.modes[i] / (lat.k2[i] + spec.beta);
    out.residual_norm = poisson_residual(out.U, rho0, spec);
    out.residual_history.push_back(out.residual_norm);
    return out;
  }

  NewtonProblem p{lat, spec, field_to_physical(rho0)};
  // The real part of rho is the physical density; a complex rho would indicate a non-real field.
  std::vector<double> U(p.rho.size(), 0.0);
  // Tolerance relative to the density, so tiny late-time densities are still resolved.
  tol *= std::max(max_abs(p.rho), 1e-300);
  if (spec.beta > 0.0) {
    out.newton_iterations = newton(p, U, tol, out.residual_history);
  } else {
    // beta = 0: U = c + U~, U~ mean-free solves the projected equation, c solves <h(c + U~)> = 0.
    p.mean_free = true;
    auto mean_h = [&](double c, std::vector<double>& Ut) {
      p.shift = c;
      out.newton_iterations += newton(p, Ut, tol, out.residual_history);
      double s = 0.0;
      for (double u : Ut) s += h_eval(spec, u + c);
      return s / double(Ut.size());
    };
    std::vector<double> U0 = U;
    double c0 = 0.0, g0 = mean_h(c0, U0);
    double c1 = 1e-3 * (1.0 + max_abs(U0));
    std::vector<double> U1 = U0;
    double g1 = mean_h(c1, U1);
    int it = 0;
    while (std::abs(g1) > tol && it++ < 60) {
      if (g1 == g0) throw ConvergenceError("zero-mode equation <h(U)> = 0 has no small solution");
      double c2 = c1 - g1 * (c1 - c0) / (g1 - g0);
      c0 = c1;
      g0 = g1;
      c1 = c2;
      U0 = U1;
      g1 = mean_h(c1, U1);
    }
    if (std::abs(g1) > tol) throw ConvergenceError("zero-mode equation <h(U)> = 0 has no small solution");
    U = U1;
    for (auto& u : U) u += c1;
  }
  out.U = field_to_spectral(U, rho.d, rho.n_x, rho.t);
  out.residual_norm = poisson_residual(out.U, rho0, spec);
  return out;
}

std::vector<SpectralDensity> electric_field(const SpectralDensity& U) {
  std::vector<SpectralDensity> E(U.d, SpectralDensity(U.d, U.n_x, U.t));
  for (std::size_t i = 0; i < U.size(); ++i) {
    Mode k = U.mode_of(i);
    for (int a = 0; a < U.d; ++a) E[a].modes[i] = cplx(0.0, -double(k[a])) * U.modes[i];
  }
  return E;
}

std::vector<SpectralDensity> electric_field(const PotentialField& U) { return electric_field(U.U); }

}  // namespace landau
