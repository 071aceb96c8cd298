#include "landau/equilibrium.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

std::array<cplx, 3> EquilibriumProfile::ray_jet(const Mode& k) const {
  if (ray_jet_override) return ray_jet_override(k);
  const Vec3 zero{0, 0, 0};
  std::array<cplx, 3> jet{mu_hat(zero), cplx(0.0, 0.0), cplx(0.0, 0.0)};
  for (int i = 0; i < d; ++i) {
    MultiIndex ji{0, 0, 0};
    ji[i] = 1;
    jet[1] += double(k[i]) * mu_hat_derivative(zero, ji);
    for (int j = 0; j < d; ++j) {
      MultiIndex jij{0, 0, 0};
      jij[i] += 1;
      jij[j] += 1;
      jet[2] += double(k[i]) * double(k[j]) * mu_hat_derivative(zero, jij);
    }
  }
  return jet;
}

namespace {

struct GaussianComponent {
  double weight;
  Vec3 center;
  double width;
};

// d^n/deta^n exp(-s^2 eta^2 / 2 - i c eta), via exp(q) P_n(eta), P_{n+1} = P_n' + q' P_n.
cplx gaussian_derivative_1d(double eta, double c, double s, int n) {
  std::vector<cplx> p{cplx(1.0, 0.0)};
  const cplx q0(0.0, -c);
  const double q1 = -s * s;
  for (int m = 0; m < n; ++m) {
    std::vector<cplx> next(p.size() + 1, cplx(0.0, 0.0));
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += double(i) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += q0 * p[i];
      next[i + 1] += q1 * p[i];
    }
    p.swap(next);
  }
  cplx poly(0.0, 0.0);
  for (std::size_t i = p.size(); i-- > 0;) poly = poly * eta + p[i];
  return poly * std::exp(cplx(-0.5 * s * s * eta * eta, -c * eta));
}

EquilibriumProfile gaussian_mixture(int d, std::vector<GaussianComponent> comps, std::string name) {
  if (d < 1 || d > 3) throw ValidationError("equilibrium dimension must be 1, 2 or 3");
  auto shared = std::make_shared<std::vector<GaussianComponent>>(std::move(comps));
  EquilibriumProfile p;
  p.d = d;
  p.name = std::move(name);
  p.mu = [shared, d](const Vec3& v) {
    double total = 0.0;
    for (const auto& c : *shared) {
      double prod = c.weight;
      for (int i = 0; i < d; ++i) {
        double u = (v[i] - c.center[i]) / c.width;
        prod *= std::exp(-0.5 * u * u) / (std::sqrt(kTwoPi) * c.width);
      }
      total += prod;
    }
    return total;
  };
  p.grad_mu = [shared, d](const Vec3& v) {
    Vec3 g{0, 0, 0};
    for (const auto& c : *shared) {
      double prod = c.weight;
      for (int i = 0; i < d; ++i) {
        double u = (v[i] - c.center[i]) / c.width;
        prod *= std::exp(-0.5 * u * u) / (std::sqrt(kTwoPi) * c.width);
      }
      for (int i = 0; i < d; ++i) g[i] += -prod * (v[i] - c.center[i]) / (c.width * c.width);
    }
    return g;
  };
  p.mu_hat_derivative = [shared, d](const Vec3& eta, const MultiIndex& j) {
    cplx total(0.0, 0.0);
    for (const auto& c : *shared) {
      cplx prod(c.weight, 0.0);
      for (int i = 0; i < d; ++i) prod *= gaussian_derivative_1d(eta[i], c.center[i], c.width, j[i]);
      total += prod;
    }
    return total;
  };
  p.mu_hat = [deriv = p.mu_hat_derivative](const Vec3& eta) { return deriv(eta, MultiIndex{0, 0, 0}); };
  double reach = 0.0;
  for (const auto& c : *shared) reach = std::max(reach, norm(c.center) + 40.0 * c.width);
  p.parameters["support_halfwidth"] = reach;
  return p;
}

double sampled_prefactor(const EquilibriumProfile& p);

}  // namespace

EquilibriumProfile build_maxwellian(int d, double width) {
  if (!(width > 0.0)) throw ValidationError("Maxwellian width must be positive");
  auto p = gaussian_mixture(d, {{1.0, {0, 0, 0}, width}}, "maxwellian");
  p.parameters["width"] = width;
  // mu_hat decays faster than any exponential; theta0 is the claimed rate, C = sup e^{theta0 |eta|} mu_hat.
  p.theta0 = 1.0 / width;
  p.C_mu = sampled_prefactor(p);
  return p;
}

EquilibriumProfile build_two_bump(double u0, double w, double width) {
  if (!(u0 >= 0.0)) throw ValidationError("two-bump separation u0 must be >= 0");
  if (!(w > 0.0 && w < 1.0)) throw ValidationError("two-bump weight w must lie in (0, 1)");
  if (!(width > 0.0)) throw ValidationError("two-bump thermal width must be positive");
  auto p = gaussian_mixture(1, {{w, {-0.5 * u0, 0, 0}, width}, {1.0 - w, {0.5 * u0, 0, 0}, width}}, "two_bump");
  p.parameters["u0"] = u0;
  p.parameters["w"] = w;
  p.parameters["width"] = width;
  p.theta0 = 1.0 / width;
  p.C_mu = sampled_prefactor(p);
  return p;
}

EquilibriumProfile build_lorentzian(double theta) {
  if (!(theta > 0.0)) throw ValidationError("Lorentzian width must be positive");
  EquilibriumProfile p;
  p.d = 1;
  p.name = "lorentzian";
  p.parameters["theta"] = theta;
  p.mu = [theta](const Vec3& v) { return theta / (kPi * (theta * theta + v[0] * v[0])); };
  p.grad_mu = [theta](const Vec3& v) {
    double den = theta * theta + v[0] * v[0];
    return Vec3{-2.0 * theta * v[0] / (kPi * den * den), 0, 0};
  };
  p.mu_hat_derivative = [theta](const Vec3& eta, const MultiIndex& j) {
    double sgn = eta[0] < 0.0 ? -1.0 : 1.0;
    return cplx(std::pow(-theta * sgn, j[0]) * std::exp(-theta * std::abs(eta[0])), 0.0);
  };
  p.mu_hat = [theta](const Vec3& eta) { return cplx(std::exp(-theta * std::abs(eta[0])), 0.0); };
  p.ray_jet_override = [theta](const Mode& k) {
    double a = theta * norm(k);
    return std::array<cplx, 3>{cplx(1.0, 0.0), cplx(-a, 0.0), cplx(a * a, 0.0)};
  };
  p.theta0 = theta;
  p.C_mu = 1.0;
  return p;
}

EquilibriumProfile build_null_profile(int d) {
  EquilibriumProfile p;
  p.d = d;
  p.name = "null";
  p.mu = [](const Vec3&) { return 0.0; };
  p.grad_mu = [](const Vec3&) { return Vec3{0, 0, 0}; };
  p.mu_hat = [](const Vec3&) { return cplx(0.0, 0.0); };
  p.mu_hat_derivative = [](const Vec3&, const MultiIndex&) { return cplx(0.0, 0.0); };
  p.theta0 = 1.0;
  p.C_mu = 0.0;
  return p;
}

EquilibriumProfile build_tabulated(const std::vector<double>& eta, const std::vector<cplx>& values, double theta0,
                                   double C_mu) {
  if (eta.size() != values.size() || eta.size() < 8)
    throw ValidationError("tabulated profile needs at least 8 matching (eta, mu_hat) rows");
  if (std::abs(eta.front()) > 1e-12) throw ValidationError("tabulated profile must start at eta = 0");
  const double h = eta[1] - eta[0];
  if (!(h > 0.0)) throw ValidationError("tabulated eta grid must be increasing");
  for (std::size_t i = 1; i < eta.size(); ++i)
    if (std::abs(eta[i] - eta[0] - h * double(i)) > 1e-9 * std::max(1.0, eta[i]))
      throw ValidationError("tabulated eta grid must be uniform");
  if (!(theta0 > 0.0)) throw ValidationError("tabulated profile needs theta0 > 0");
  // Mirror into an even/odd extension so the spline sees a smooth function through eta = 0.
  const std::size_t n = eta.size();
  std::vector<double> re(2 * n - 1), im(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    re[n - 1 + i] = values[i].real();
    re[n - 1 - i] = values[i].real();
    im[n - 1 + i] = values[i].imag();
    im[n - 1 - i] = -values[i].imag();
  }
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  const double start = -eta.back();
  auto sre = std::make_shared<Spline>(re.begin(), re.end(), start, h);
  auto sim = std::make_shared<Spline>(im.begin(), im.end(), start, h);
  const double end = eta.back();
  auto samples = std::make_shared<std::vector<cplx>>(values);
  EquilibriumProfile p;
  p.d = 1;
  p.name = "tabulated";
  p.theta0 = theta0;
  p.C_mu = C_mu;
  p.parameters["eta_end"] = end;
  p.parameters["deta"] = h;
  p.mu_hat_derivative = [sre, sim, end](const Vec3& e, const MultiIndex& j) -> cplx {
    double x = e[0];
    if (std::abs(x) > end) return cplx(0.0, 0.0);
    switch (j[0]) {
      case 0: return cplx((*sre)(x), (*sim)(x));
      case 1: return cplx(sre->prime(x), sim->prime(x));
      case 2: return cplx(sre->double_prime(x), sim->double_prime(x));
      default: return cplx(0.0, 0.0);
    }
  };
  p.mu_hat = [deriv = p.mu_hat_derivative](const Vec3& e) { return deriv(e, MultiIndex{0, 0, 0}); };
  // mu(v) = (1/pi) Re int_0^end mu_hat(eta) e^{i eta v} d eta, trapezoid on the table.
  auto inverse = [samples, h](double v, int order) {
    double s = 0.0;
    const std::size_t m = samples->size();
    for (std::size_t i = 0; i < m; ++i) {
      double e = h * double(i);
      cplx factor = std::polar(1.0, e * v);
      if (order == 1) factor *= cplx(0.0, e);
      double wgt = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
      s += wgt * ((*samples)[i] * factor).real();
    }
    return s * h / kPi;
  };
  p.mu = [inverse](const Vec3& v) { return inverse(v[0], 0); };
  p.grad_mu = [inverse](const Vec3& v) { return Vec3{inverse(v[0], 1), 0, 0}; };
  return p;
}

EquilibriumProfile load_tabulated_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open equilibrium profile file: " + path);
  double theta0 = -1.0, C = -1.0;
  std::vector<double> eta;
  std::vector<cplx> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "theta0" || first == "C") {
      double v;
      if (!(ls >> v)) throw ValidationError(path + ":" + std::to_string(lineno) + ": missing value for " + first);
      (first == "theta0" ? theta0 : C) = v;
      continue;
    }
    double e, re, im = 0.0;
    try {
      e = std::stod(first);
    } catch (...) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" + first + "'");
    }
    if (!(ls >> re)) throw ValidationError(path + ":" + std::to_string(lineno) + ": expected '<eta> <re> [<im>]'");
    ls >> im;
    eta.push_back(e);
    vals.emplace_back(re, im);
  }
  if (theta0 <= 0.0) throw ValidationError(path + ": missing or non-positive theta0");
  if (C < 0.0) throw ValidationError(path + ": missing or negative C");
  return build_tabulated(eta, vals, theta0, C);
}

void save_tabulated_profile(const EquilibriumProfile& profile, const std::string& path, double eta_end,
                            int samples) {
  if (profile.d != 1) throw ValidationError("tabulated profiles are one-dimensional");
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write profile file: " + path);
  out << std::setprecision(17);
  out << "# tabulated mu_hat of profile '" << profile.name << "'\n";
  out << "theta0 " << profile.theta0 << "\nC " << profile.C_mu << "\n";
  for (int i = 0; i < samples; ++i) {
    double e = eta_end * i / double(samples - 1);
    cplx v = profile.mu_hat(Vec3{e, 0, 0});
    out << e << " " << v.real() << " " << v.imag() << "\n";
  }
}

namespace {

std::vector<MultiIndex> multi_indices(int d, int j_max) {
  std::vector<MultiIndex> out;
  for (int a = 0; a <= j_max; ++a)
    for (int b = 0; b <= (d > 1 ? j_max : 0); ++b)
      for (int c = 0; c <= (d > 2 ? j_max : 0); ++c)
        if (a + b + c <= j_max) out.push_back({a, b, c});
  return out;
}

// Returns slope of least-squares line through (x, y).
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

H1Report verify_H1(const EquilibriumProfile& profile, int j_max, const std::vector<double>& eta_samples) {
  if (j_max < 0) throw ValidationError("j_max must be >= 0");
  if (eta_samples.size() < 4) throw ValidationError("verify_H1 needs at least 4 eta samples");
  std::vector<double> s = eta_samples;
  for (auto& e : s) e = std::abs(e);
  std::sort(s.begin(), s.end());

  std::vector<Vec3> directions{{1, 0, 0}};
  if (profile.d > 1) {
    double c = 1.0 / std::sqrt(double(profile.d));
    directions.push_back({c, c, profile.d > 2 ? c : 0.0});
  }

  H1Report rep;
  rep.theta_claimed = profile.theta0;
  rep.theta_fit = std::numeric_limits<double>::infinity();
  bool decaying = true;
  std::ostringstream msg;
  for (const auto& j : multi_indices(profile.d, j_max)) {
    for (const auto& dir : directions) {
      std::vector<double> y(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        Vec3 eta{s[i] * dir[0], s[i] * dir[1], s[i] * dir[2]};
        y[i] = std::abs(profile.mu_hat_derivative(eta, j));
        rep.C_fit = std::max(rep.C_fit, y[i] * std::exp(profile.theta0 * s[i]));
      }
      // Right-running supremum envelope.
      std::vector<double> env(y.size());
      double run = 0.0;
      for (std::size_t i = y.size(); i-- > 0;) {
        run = std::max(run, y[i]);
        env[i] = run;
      }
      double theta_j;
      if (env.front() == 0.0 || env.back() == 0.0) {
        theta_j = std::numeric_limits<double>::infinity();  // vanishing tail
      } else {
        std::vector<double> lx(env.size()), ly(env.size());
        for (std::size_t i = 0; i < env.size(); ++i) {
          lx[i] = s[i];
          ly[i] = std::log(env[i]);
        }
        const std::size_t half = env.size() / 2;
        std::vector<double> hx(lx.begin(), lx.begin() + half + 1), hy(ly.begin(), ly.begin() + half + 1);
        std::vector<double> tx(lx.begin() + half, lx.end()), ty(ly.begin() + half, ly.end());
        double head = -ls_slope(hx, hy);
        double tail = -ls_slope(tx, ty);
        if (!(tail > 0.0) || tail < 0.75 * head) {
          decaying = false;
          msg << "derivative order (" << j[0] << "," << j[1] << "," << j[2]
              << ") decays sub-exponentially (head rate " << head << ", tail rate " << tail << "); ";
        }
        theta_j = std::min(head, tail);
      }
      rep.theta_per_derivative.push_back(theta_j);
      rep.theta_fit = std::min(rep.theta_fit, theta_j);
    }
  }
  rep.pass = decaying && rep.theta_fit >= profile.theta0;
  if (decaying && !rep.pass) msg << "fitted decay rate " << rep.theta_fit << " below claimed theta0 " << profile.theta0;
  rep.message = rep.pass ? "exponential decay bound holds on the sampled range" : msg.str();
  return rep;
}

namespace {
// sup over |j| <= d and eta in [0, 40/theta0] of |d^j mu_hat| e^{theta0 |eta|}.
double sampled_prefactor(const EquilibriumProfile& p) {
  std::vector<double> eta(801);
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = 40.0 / p.theta0 * double(i) / double(eta.size() - 1);
  return verify_H1(p, p.d, eta).C_fit;
}
}  // namespace

double normalization_defect(const EquilibriumProfile& profile) {
  auto it = profile.parameters.find("support_halfwidth");
  if (profile.d == 1 && it != profile.parameters.end() && profile.mu) {
    const double L = it->second;
    double err = 0.0;
    double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double v) { return profile.mu(Vec3{v, 0, 0}); }, -L, L, 20, 1e-14, &err);
    return std::abs(mass - 1.0);
  }
  return std::abs(profile.mu_hat(Vec3{0, 0, 0}) - 1.0);
}

}  // namespace landau
