#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "landau/gevrey.hpp"
#include "landau/grid.hpp"
#include "landau/vlasov.hpp"

namespace landau {

// lambda(t) = lambda0 + lambda0 (1+t)^{-delta}.
double lambda_schedule(double t, double lambda0, double delta);

// lambda0 > 0, delta > 0, lambda0 <= lambda1/4, sigma > 3 + delta, 3 gamma > 1 + 2 delta.
void validate_schedule(double lambda0, double delta, double lambda1, const GevreyParams& params);

// "Bounded, no growth trend": max over [T/2, T] at most `tolerance` times the max over [0, T/2].
struct BoundednessReport {
  bool bounded = false;
  double early_max = 0.0;
  double late_max = 0.0;
  double ratio = 0.0;
  double late_log_slope = 0.0;  // least-squares slope of log y over the final half
};
BoundednessReport bounded_series(const std::vector<double>& t, const std::vector<double>& y, double tolerance = 1.1);

struct RadiusAudit {
  BoundednessReport F;  // F[Delta U](t, lambda(t)) <t>^{sigma-1}
  BoundednessReport G;  // G[g(t)](lambda(t))
  bool pass = false;
};
// Evaluates the audit samples recorded by a run whose schedule must match (lambda0, delta).
RadiusAudit radius_audit(const Trajectory& trajectory, double lambda0, double delta, double lambda1,
                         const GevreyParams& params);

// G[g2 - g1](z) for free-transport states. z <= lambda0/2, and z <= theta0/2 when gamma = 1.
double scattering_distance(const PhaseSpaceState& g1, const PhaseSpaceState& g2, const GevreyParams& params,
                           double lambda0, double theta0 = std::numeric_limits<double>::infinity(), int j_max = -1);

// Pull-back of the final state of a run.
PhaseSpaceState f_infinity_estimate(const Trajectory& trajectory);

struct CauchyReport {
  std::vector<double> t;          // snapshot times
  std::vector<double> distances;  // G[g(t_{m+1}) - g(t_m)]
  std::vector<double> ratios;     // successive distance ratios above the floor
  double floor = 0.0;             // round-off floor in G units
  double log_slope = 0.0;         // regression slope of log distance against m above the floor
  int resolved = 0;               // distances above the floor
  bool geometric = false;
};
// Cauchy test on lab-frame snapshots at increasing (dyadic) times.
CauchyReport dyadic_cauchy(const std::vector<PhaseSpaceState>& snapshots, const GevreyParams& params, double lambda0,
                           double theta0 = std::numeric_limits<double>::infinity(), int j_max = -1);

using TestFunction = std::function<double(const Vec3& x, const Vec3& v)>;

struct WeakLimitReport {
  std::vector<double> t;
  std::vector<double> pairing;    // <phi, f(t)>
  std::vector<double> deviation;  // |<phi, f(t)> - <phi, <f_inf>_x>|
  double limit_pairing = 0.0;
  double final_ratio = 0.0;       // deviation(last) / deviation(first)
  bool monotone_envelope = false;
  bool converged = false;
};
double pairing(const PhaseSpaceState& f, const TestFunction& phi);
WeakLimitReport weak_limit_test(const std::vector<PhaseSpaceState>& snapshots, const PhaseSpaceState& f_infinity,
                                const TestFunction& phi, double ratio_threshold = 1e-3);

}  // namespace landau
