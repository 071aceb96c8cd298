#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "landau/asymptotics.hpp"
#include "landau/coupling.hpp"
#include "landau/gevrey.hpp"
#include "landau/grid.hpp"

namespace landau {

// Real random torus field with F[phi](t, z) = max_k u_k, u_k uniform in (0, 1]: |phi_hat_k| = u_k |k|^alpha / A_{k,kt}.
// Supported on 1 <= max_a |k_a| < n_x / 4 so products stay alias free.
SpectralDensity random_field(int d, int n_x, double t, const GevreyParams& params, std::uint64_t seed);

// Spectral coefficients of the pointwise product.
SpectralDensity field_product(const SpectralDensity& a, const SpectralDensity& b);

// F over all nonzero modes (no band), ignoring the mean mode.
double gen_F_unbanded(const SpectralDensity& rho, double t, const GevreyParams& params);

struct AlgebraReport {
  std::vector<double> times;
  // Per time: C* for batch one, batch two (base lattice) and the refined lattice.
  std::vector<std::vector<double>> batch_C;
  std::vector<double> spread;  // max/min of the batch values per time
  double C_star = 0.0;
  bool stable = false;         // spread <= 2 at every time
  // Normalized claim sum sup_k sum_l A_k/(A_l A_{k-l}) |l|^a |k-l|^a / |k|^a per region A, B, C.
  std::vector<double> region_max;          // base truncation
  std::vector<double> region_max_refined;  // doubled truncation
  double claim_max = 0.0;
  double claim_max_refined = 0.0;
  bool claim_stable = false;               // refined / base <= 1.1
  double fraction_max = 0.0;               // |l||k-l|<k,kt> / (|k|<l,lt><k-l,(k-l)t>) over random samples
  double fraction_bound = 0.0;             // sqrt(3)
  bool fraction_holds = false;
  bool pass = false;
};
AlgebraReport verify_algebra_property(const GevreyParams& params, const std::vector<double>& times, int pairs,
                                      std::uint64_t seed, int d = 1, int n_x = 32);

struct FGReport {
  double ratio = 0.0;              // max F[rho](t,z) / G[g](z)^{1/2}
  double ratio_refined = 0.0;
  double pointwise = 0.0;          // max sup_eta A |g_hat| / G^{1/2}
  double pointwise_refined = 0.0;
  int samples = 0;
  int skipped = 0;                 // zero states
  bool stable = false;             // both ratios within 10% under refinement
  bool pass = false;
};
// Gaussian family cos(k x) exp(-(v-u)^2 / (2 s^2)) on the base grid and on the doubled grid.
FGReport verify_lemma_F_le_sqrtG(const GevreyParams& params, const TorusGrid& base, const std::vector<double>& times);
// Same ratio on given free-transport states (rho matched through g_hat_{k,kt}); zero states skipped.
double F_over_sqrtG(const std::vector<PhaseSpaceState>& states, const GevreyParams& params, double* pointwise,
                    int* skipped);

struct IntegralReport {
  double sigma = 0.0;
  std::vector<double> t;
  std::vector<double> polynomial_ratio;   // int e^{-theta(t-s)/4} <s>^{1-sigma} ds / <t>^{1-sigma}
  std::vector<double> gevrey_ratio;       // int e^{-theta(t-s)/4} e^{-lambda1 <s>^gamma / 2} ds / e^{-nu t^gamma}
  BoundednessReport polynomial;
  BoundednessReport gevrey;
  double nu = 0.0;
};
IntegralReport verify_integral_inequalities(double theta1, double lambda1, double gamma, double sigma,
                                            const std::vector<double>& t);

struct SqrtEpsReport {
  std::vector<double> eps;
  std::vector<double> F_rho;       // F[rho](0, lambda1)
  std::vector<double> F_laplacian; // F[Delta U](0, lambda1)
  double slope_rho = 0.0;
  double slope_laplacian = 0.0;
  bool pass = false;               // both slopes within 0.5 +- 0.05
};
SqrtEpsReport verify_sqrt_eps(const GevreyParams& params, double lambda1, const CouplingSpec& spec,
                              const std::vector<double>& eps, const TorusGrid& grid);

struct CompositionReport {
  int samples = 0;
  double C = 0.0;             // max(C*, 1)
  double worst_margin = 0.0;  // max F[h(phi)] / h~(C F[phi])
  bool holds = false;
};
CompositionReport verify_composition(const GevreyParams& params, const CouplingSpec& spec, double C_star, int samples,
                                     std::uint64_t seed, int n_x = 32);

// F[U] <= F[Delta U] for field-solver outputs on random densities.
bool verify_F_U_le_F_laplacian(const GevreyParams& params, const CouplingSpec& spec, int samples, std::uint64_t seed);

struct LemmaSuiteOptions {
  GevreyParams params{0.5, 0.5, 4.0, 0.25};
  double theta1 = 1.0;
  double lambda1 = 1.0;
  int pairs = 100;
  std::uint64_t seed = 12345;
  TorusGrid grid{1, 32, 256, 8.0};
};

struct LemmaSuiteReport {
  nlohmann::json doc;
  bool algebra = false;
  bool f_le_sqrt_g = false;
  bool integral_bounded = false;
  bool negative_control_diverges = false;
  bool sqrt_eps = false;
  bool composition = false;
  bool f_u_le_f_laplacian = false;
  bool pass = false;
};
LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& options);

}  // namespace landau
