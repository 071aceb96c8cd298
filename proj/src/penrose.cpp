#include "landau/penrose.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

double coupling_prefactor(const Mode& k, double beta) {
  double k2 = norm2(k);
  if (k2 == 0.0) return 0.0;
  return k2 / (beta + k2);
}

namespace {

using GL16 = boost::math::quadrature::gauss<double, 16>;

// Composite 16-point Gauss-Legendre nodes and weights on [0, T] with panels of length <= panel.
void composite_nodes(double T, double panel, std::vector<double>& t, std::vector<double>& w) {
  const auto& x = GL16::abscissa();
  const auto& wt = GL16::weights();
  std::size_t panels = static_cast<std::size_t>(std::ceil(T / panel));
  if (panels == 0) panels = 1;
  const double h = T / double(panels);
  t.clear();
  w.clear();
  t.reserve(panels * 16);
  w.reserve(panels * 16);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = h * (double(p) + 0.5);
    for (std::size_t i = 0; i < x.size(); ++i) {
      t.push_back(mid - 0.5 * h * x[i]);
      w.push_back(0.5 * h * wt[i]);
      t.push_back(mid + 0.5 * h * x[i]);
      w.push_back(0.5 * h * wt[i]);
    }
  }
}

double decay_scale(const Mode& k, const EquilibriumProfile& profile) {
  double kn = norm(k);
  if (kn == 0.0) throw DomainError("Laplace quadrature needs k != 0");
  if (!(profile.theta0 > 0.0)) throw ValidationError("profile theta0 must be positive");
  return profile.theta0 * kn;
}

}  // namespace

LaplaceQuadrature::LaplaceQuadrature(const Mode& k, const EquilibriumProfile& profile, double re_min,
                                     double imag_max) {
  const double rate = decay_scale(k, profile);
  t_max_ = (30.0 / rate) * (1.0 + std::abs(re_min) / rate);
  panel_ = std::min(1.0 / rate, kPi / std::max(std::abs(imag_max), 1.0));
  std::vector<double> w;
  composite_nodes(t_max_, panel_, t_, w);
  w_.resize(t_.size());
  double biggest = 0.0;
  std::vector<double> size(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) {
    w_[i] = w[i] * t_[i] * profile.mu_hat(scaled(k, t_[i]));
    size[i] = std::abs(w_[i]) * std::exp(-re_min * t_[i]);
    biggest = std::max(biggest, size[i]);
  }
  // Drop nodes whose contribution is below round-off for every admissible lambda.
  std::size_t kept = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (size[i] >= 1e-22 * biggest) {
      t_[kept] = t_[i];
      w_[kept] = w_[i];
      ++kept;
    }
  }
  t_.resize(kept);
  w_.resize(kept);
}

cplx LaplaceQuadrature::transform(cplx lambda) const {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < t_.size(); ++i) s += w_[i] * std::exp(-lambda * t_[i]);
  return s;
}

std::vector<cplx> LaplaceQuadrature::transform_line(double a, double y0, double h, std::size_t n) const {
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  const std::size_t m = t_.size();
  std::vector<cplx> base(m), step(m), ph(m);
  for (std::size_t i = 0; i < m; ++i) {
    base[i] = w_[i] * std::exp(-a * t_[i]);
    step[i] = std::polar(1.0, -h * t_[i]);
  }
  const std::size_t reseed = 32;
  for (std::size_t j = 0; j < n; ++j) {
    if (j % reseed == 0) {
      const double y = y0 + h * double(j);
      for (std::size_t i = 0; i < m; ++i) ph[i] = std::polar(1.0, -y * t_[i]);
    }
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      s += base[i] * ph[i];
      ph[i] *= step[i];
    }
    out[j] = s;
  }
  return out;
}

cplx dispersion_value(const Mode& k, cplx lambda, const EquilibriumProfile& profile, double beta) {
  if (!(beta >= 0.0)) throw ValidationError("beta >= 0 required");
  if (is_zero(k)) return cplx(1.0, 0.0);
  const double limit = -0.5 * profile.theta0 * norm(k);
  if (!(lambda.real() > limit)) {
    std::ostringstream os;
    os << "Re lambda = " << lambda.real() << " outside the analyticity region Re lambda > -theta0 |k| / 2 = "
       << limit;
    throw DomainError(os.str());
  }
  LaplaceQuadrature q(k, profile, lambda.real(), lambda.imag());
  return 1.0 + coupling_prefactor(k, beta) * q.transform(lambda);
}

RayBounds ray_bounds(const Mode& k, const EquilibriumProfile& profile) {
  const double kn = norm(k);
  if (kn == 0.0) throw DomainError("ray bounds need k != 0");
  Vec3 u{k[0] / kn, k[1] / kn, k[2] / kn};
  const double S = 40.0 / profile.theta0;
  std::vector<double> s, w;
  composite_nodes(S, 0.05 / profile.theta0, s, w);
  RayBounds b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Vec3 eta{u[0] * s[i], u[1] * s[i], u[2] * s[i]};
    cplx m = profile.mu_hat(eta);
    cplx dm(0.0, 0.0);
    for (int a = 0; a < profile.d; ++a) {
      MultiIndex j{0, 0, 0};
      j[a] = 1;
      dm += u[a] * profile.mu_hat_derivative(eta, j);
    }
    b.variation += w[i] * std::abs(m + s[i] * dm);
    b.first_moment += w[i] * s[i] * std::abs(m);
  }
  return b;
}

namespace {

struct ContourPoint {
  cplx lambda;
  cplx value;
};

// Accumulates arg changes along a parametrized path, bisecting until every phase step is below pi/4.
double accumulate_phase(const std::function<cplx(double)>& path, const std::function<cplx(cplx)>& D, double s0,
                        double s1, int initial) {
  auto eval = [&](double s) {
    cplx l = path(s);
    cplx v = D(l);
    if (std::abs(v) < 1e-10) {
      std::ostringstream os;
      os << "winding contour passes within 1e-10 of a zero of D near lambda = " << l << "; refine and retry";
      throw ContourRefineError(os.str());
    }
    return ContourPoint{l, v};
  };
  double total = 0.0;
  std::function<void(double, ContourPoint, double, ContourPoint, int)> segment =
      [&](double a, ContourPoint pa, double b, ContourPoint pb, int depth) {
        double dphi = std::arg(pb.value / pa.value);
        if (std::abs(dphi) <= kPi / 4.0 || depth > 40) {
          total += dphi;
          return;
        }
        double m = 0.5 * (a + b);
        ContourPoint pm = eval(m);
        segment(a, pa, m, pm, depth + 1);
        segment(m, pm, b, pb, depth + 1);
      };
  ContourPoint prev = eval(s0);
  for (int i = 1; i <= initial; ++i) {
    double s = s0 + (s1 - s0) * double(i) / double(initial);
    ContourPoint cur = eval(s);
    segment(s0 + (s1 - s0) * double(i - 1) / double(initial), prev, s, cur, 0);
    prev = cur;
  }
  return total;
}

}  // namespace

int winding_check(const Mode& k, const EquilibriumProfile& profile, double beta, double radius) {
  if (is_zero(k)) return 0;
  const double C = coupling_prefactor(k, beta);
  double R = radius;
  if (R <= 0.0) {
    RayBounds b = ray_bounds(k, profile);
    R = std::max(4.0 * C * b.variation / norm(k), 1e-3);
  }
  auto D = [&](cplx l) { return dispersion_value(k, l, profile, beta); };
  // Down the imaginary axis from iR to -iR, then counterclockwise along the arc back to iR.
  double phase = accumulate_phase([R](double s) { return cplx(0.0, R - s); }, D, 0.0, 2.0 * R, 256);
  phase += accumulate_phase([R](double phi) { return std::polar(R, phi); }, D, -kPi / 2.0, kPi / 2.0, 256);
  return static_cast<int>(std::lround(phase / kTwoPi));
}

std::vector<Mode> lattice_shell(int d, int k_max) {
  std::vector<Mode> out;
  const int lo = -k_max, hi = k_max;
  for (int a = lo; a <= hi; ++a)
    for (int b = (d > 1 ? lo : 0); b <= (d > 1 ? hi : 0); ++b)
      for (int c = (d > 2 ? lo : 0); c <= (d > 2 ? hi : 0); ++c) {
        Mode k{a, b, c};
        double n = norm(k);
        if (n >= 1.0 && n <= k_max) out.push_back(k);
      }
  return out;
}

PenroseReport penrose_margin(const EquilibriumProfile& profile, double beta, int k_max, double omega,
                             double boundary_step, double kappa_resolution) {
  if (k_max < 1) throw ValidationError("k_max >= 1 required");
  if (!(boundary_step > 0.0)) throw ValidationError("boundary_step must be positive");
  if (!(beta >= 0.0)) throw ValidationError("beta >= 0 required");
  if (!(kappa_resolution > 0.0 && kappa_resolution < 1.0)) throw ValidationError("kappa resolution must lie in (0,1)");
  PenroseReport rep;
  rep.beta = beta;
  rep.k_max = k_max;
  rep.boundary_step = boundary_step;
  rep.k_scanned = lattice_shell(profile.d, k_max);
  const std::size_t nk = rep.k_scanned.size();

  std::vector<double> omega_k(nk);
  double max_m1 = 0.0;
  for (std::size_t i = 0; i < nk; ++i) {
    const Mode& k = rep.k_scanned[i];
    RayBounds b = ray_bounds(k, profile);
    max_m1 = std::max(max_m1, b.first_moment);
    omega_k[i] = omega > 0.0 ? omega : std::max(coupling_prefactor(k, beta) * b.variation / (norm(k) * kappa_resolution), 1.0);
  }
  rep.omega = *std::max_element(omega_k.begin(), omega_k.end());
  rep.tail_bound = max_m1 / double((k_max + 1) * (k_max + 1));

  rep.winding.assign(nk, 0);
  rep.mode_minimum.assign(nk, 0.0);
  std::vector<cplx> worst(nk);
  std::vector<double> tmax(nk), panel(nk);
  parallel_for(nk, [&](std::size_t i) {
    const Mode& k = rep.k_scanned[i];
    const double Om = omega_k[i];
    const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * Om / boundary_step)) + 1;
    const double h = 2.0 * Om / double(n - 1);
    LaplaceQuadrature q(k, profile, 0.0, Om);
    tmax[i] = q.t_max();
    panel[i] = q.panel();
    auto L = q.transform_line(0.0, -Om, h, n);
    const double C = coupling_prefactor(k, beta);
    double best = HUGE_VAL;
    for (std::size_t j = 0; j < n; ++j) {
      double a = std::abs(1.0 + C * L[j]);
      if (a < best) {
        best = a;
        worst[i] = cplx(0.0, -Om + h * double(j));
      }
    }
    rep.mode_minimum[i] = best;
    rep.winding[i] = winding_check(k, profile, beta);
  });
  rep.boundary_min = HUGE_VAL;
  rep.winding_ok = true;
  for (std::size_t i = 0; i < nk; ++i) {
    if (rep.mode_minimum[i] < rep.boundary_min) {
      rep.boundary_min = rep.mode_minimum[i];
      rep.worst_k = rep.k_scanned[i];
      rep.worst_lambda = worst[i];
    }
    if (rep.winding[i] != 0) {
      rep.winding_ok = false;
      rep.unstable_modes.push_back(rep.k_scanned[i]);
    }
    rep.t_max = std::max(rep.t_max, tmax[i]);
    rep.quadrature_panel = i == 0 ? panel[i] : std::min(rep.quadrature_panel, panel[i]);
  }
  rep.kappa0 = rep.winding_ok ? rep.boundary_min : 0.0;
  return rep;
}

}  // namespace landau
