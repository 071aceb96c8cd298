#include "landau/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/fit.hpp"
#include "landau/generators.hpp"
#include "landau/transport.hpp"

namespace landau {

double lambda_schedule(double t, double lambda0, double delta) {
  if (!(t >= 0.0)) throw DomainError("radius schedule needs t >= 0");
  return lambda0 + lambda0 * std::pow(1.0 + t, -delta);
}

void validate_schedule(double lambda0, double delta, double lambda1, const GevreyParams& params) {
  if (!(lambda0 > 0.0)) throw ValidationError("lambda0 > 0 required");
  if (!(delta > 0.0)) throw ValidationError("delta > 0 required");
  if (!(lambda0 <= lambda1 / 4.0)) throw ValidationError("lambda0 <= lambda1/4 required");
  if (!(params.sigma > 3.0 + delta)) throw ValidationError("sigma > 3 + delta required");
  if (!(3.0 * params.gamma > 1.0 + 2.0 * delta)) throw ValidationError("3*gamma > 1 + 2*delta required");
}

BoundednessReport bounded_series(const std::vector<double>& t, const std::vector<double>& y, double tolerance) {
  if (t.size() != y.size() || t.size() < 4) throw ValidationError("boundedness test needs at least four samples");
  BoundednessReport r;
  const double half = 0.5 * (t.front() + t.back());
  std::vector<double> lt, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < half) {
      r.early_max = std::max(r.early_max, y[i]);
    } else {
      r.late_max = std::max(r.late_max, y[i]);
      if (y[i] > 0.0) {
        lt.push_back(t[i]);
        ly.push_back(std::log(y[i]));
      }
    }
  }
  r.ratio = r.early_max > 0.0 ? r.late_max / r.early_max : (r.late_max > 0.0 ? HUGE_VAL : 0.0);
  if (lt.size() >= 2) {
    double mt = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      mt += lt[i];
      ml += ly[i];
    }
    mt /= double(lt.size());
    ml /= double(lt.size());
    double stt = 0.0, stl = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      stt += (lt[i] - mt) * (lt[i] - mt);
      stl += (lt[i] - mt) * (ly[i] - ml);
    }
    r.late_log_slope = stt > 0.0 ? stl / stt : 0.0;
  }
  r.bounded = std::isfinite(r.late_max) && r.ratio <= tolerance;
  return r;
}

RadiusAudit radius_audit(const Trajectory& trajectory, double lambda0, double delta, double lambda1,
                         const GevreyParams& params) {
  validate_schedule(lambda0, delta, lambda1, params);
  if (trajectory.audits.size() < 4) throw ValidationError("radius audit needs a run with audit samples enabled");
  std::vector<double> t, F, G;
  for (const auto& a : trajectory.audits) {
    if (std::abs(a.lambda - lambda_schedule(a.t, lambda0, delta)) > 1e-12) {
      throw ValidationError("audit samples were recorded with a different radius schedule");
    }
    t.push_back(a.t);
    F.push_back(a.F_weighted);
    G.push_back(a.G_g);
  }
  RadiusAudit r;
  r.F = bounded_series(t, F);
  r.G = bounded_series(t, G);
  r.pass = r.F.bounded && r.G.bounded;
  return r;
}

namespace {

void check_radius(const GevreyParams& params, double lambda0, double theta0) {
  if (!(params.z <= 0.5 * lambda0)) {
    std::ostringstream os;
    os << "scattering radius z = " << params.z << " exceeds lambda0/2 = " << 0.5 * lambda0;
    throw ValidationError(os.str());
  }
  if (params.gamma == 1.0 && !(params.z <= 0.5 * theta0)) {
    std::ostringstream os;
    os << "scattering radius z = " << params.z << " exceeds theta0/2 = " << 0.5 * theta0 << " for gamma = 1";
    throw ValidationError(os.str());
  }
}

}  // namespace

double scattering_distance(const PhaseSpaceState& g1, const PhaseSpaceState& g2, const GevreyParams& params,
                           double lambda0, double theta0, int j_max) {
  check_radius(params, lambda0, theta0);
  if (g1.frame != Frame::free_transport || g2.frame != Frame::free_transport) {
    throw ValidationError("scattering distance needs free-transport states");
  }
  if (!(g1.grid == g2.grid)) throw ValidationError("scattering distance needs states on the same grid");
  PhaseSpaceState diff = g2;
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= g1.values[i];
  return gen_G(diff, params, j_max);
}

PhaseSpaceState f_infinity_estimate(const Trajectory& trajectory) {
  if (trajectory.final_state.values.empty()) throw ValidationError("trajectory has no final state");
  return free_transport_pullback(trajectory.final_state, PullbackDirection::lab_to_free);
}

CauchyReport dyadic_cauchy(const std::vector<PhaseSpaceState>& snapshots, const GevreyParams& params, double lambda0,
                           double theta0, int j_max) {
  if (snapshots.size() < 3) throw ValidationError("Cauchy test needs at least three snapshots");
  CauchyReport r;
  std::vector<PhaseSpaceState> g;
  double scale = 0.0;
  for (const auto& s : snapshots) {
    r.t.push_back(s.time);
    g.push_back(s.frame == Frame::lab ? free_transport_pullback(s, PullbackDirection::lab_to_free) : s);
    scale = std::max(scale, gen_G(g.back(), params, j_max));
  }
  for (std::size_t m = 0; m + 1 < g.size(); ++m) {
    r.distances.push_back(scattering_distance(g[m], g[m + 1], params, lambda0, theta0, j_max));
  }
  r.floor = 1e-26 * scale;
  std::vector<double> xs, ls;
  for (std::size_t m = 0; m < r.distances.size(); ++m) {
    if (r.distances[m] <= r.floor) break;
    xs.push_back(double(m));
    ls.push_back(std::log(r.distances[m]));
  }
  r.resolved = static_cast<int>(xs.size());
  bool decreasing = r.resolved >= 2;
  for (std::size_t m = 1; m < xs.size(); ++m) {
    r.ratios.push_back(r.distances[m] / r.distances[m - 1]);
    if (!(r.ratios.back() < 1.0)) decreasing = false;
  }
  if (xs.size() >= 2) {
    double mx = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      ml += ls[i];
    }
    mx /= double(xs.size());
    ml /= double(xs.size());
    double sxx = 0.0, sxl = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxl += (xs[i] - mx) * (ls[i] - ml);
    }
    r.log_slope = sxl / sxx;
  }
  r.geometric = decreasing && r.log_slope < 0.0;
  return r;
}

double pairing(const PhaseSpaceState& f, const TestFunction& phi) {
  const TorusGrid& g = f.grid;
  double s = 0.0;
  for (std::size_t ix = 0; ix < g.nx_total(); ++ix) {
    const Vec3 x = g.position(ix);
    for (std::size_t iv = 0; iv < g.nv_total(); ++iv) s += phi(x, g.velocity(iv)) * f.at(ix, iv).real();
  }
  return s * std::pow(g.dx() * g.dv(), g.d);
}

WeakLimitReport weak_limit_test(const std::vector<PhaseSpaceState>& snapshots, const PhaseSpaceState& f_infinity,
                                const TestFunction& phi, double ratio_threshold) {
  if (snapshots.size() < 2) throw ValidationError("weak-limit test needs at least two snapshots");
  // Spatial average of f_infinity, spread over x.
  PhaseSpaceState mean = f_infinity;
  const TorusGrid& g = mean.grid;
  const std::size_t nx = g.nx_total(), nv = g.nv_total();
  for (std::size_t iv = 0; iv < nv; ++iv) {
    cplx avg(0.0, 0.0);
    for (std::size_t ix = 0; ix < nx; ++ix) avg += f_infinity.at(ix, iv);
    avg /= double(nx);
    for (std::size_t ix = 0; ix < nx; ++ix) mean.at(ix, iv) = avg;
  }
  WeakLimitReport r;
  r.limit_pairing = pairing(mean, phi);
  for (const auto& s : snapshots) {
    r.t.push_back(s.time);
    r.pairing.push_back(pairing(s, phi));
    r.deviation.push_back(std::abs(r.pairing.back() - r.limit_pairing));
  }
  const auto env = envelope_points(r.deviation);
  r.monotone_envelope = !env.empty() && env.front() == 0;
  r.final_ratio = r.deviation.front() > 0.0 ? r.deviation.back() / r.deviation.front() : 0.0;
  r.converged = r.monotone_envelope && r.final_ratio < ratio_threshold;
  return r;
}

}  // namespace landau
