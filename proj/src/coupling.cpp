#include "landau/coupling.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

bool CouplingSpec::has_h() const {
  for (double a : h_coeffs)
    if (a != 0.0) return true;
  return false;
}

void CouplingSpec::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta >= 0 required");
  if (h_coeffs.size() > 0 && h_coeffs[0] != 0.0) throw ValidationError("h(0) = 0 required (a_0 = 0)");
  if (h_coeffs.size() > 1 && h_coeffs[1] != 0.0) throw ValidationError("h(x) = O(x^2) required (a_1 = 0)");
  if (!(radius > 0.0)) throw ValidationError("analyticity radius of h must be positive");
  for (double a : h_coeffs)
    if (!std::isfinite(a)) throw ValidationError("h coefficients must be finite");
}

CouplingSpec CouplingSpec::vp() { return CouplingSpec{"vp", 0.0, {}, std::numeric_limits<double>::infinity()}; }

CouplingSpec CouplingSpec::screened() {
  return CouplingSpec{"screened", 1.0, {}, std::numeric_limits<double>::infinity()};
}

CouplingSpec CouplingSpec::vpme() {
  CouplingSpec s{"vpme", 1.0, std::vector<double>(61, 0.0), std::numeric_limits<double>::infinity()};
  double f = 1.0;
  for (int n = 1; n <= 60; ++n) {
    f *= n;
    if (n >= 2) s.h_coeffs[n] = 1.0 / f;
  }
  return s;
}

CouplingSpec CouplingSpec::from_name(const std::string& name) {
  if (name == "vp") return vp();
  if (name == "screened") return screened();
  if (name == "vpme") return vpme();
  throw ValidationError("unknown coupling '" + name + "' (expected vp, screened or vpme)");
}

namespace {
void check_radius(const CouplingSpec& spec, double x) {
  if (std::abs(x) >= spec.radius) {
    std::ostringstream os;
    os << "argument |u| = " << std::abs(x) << " reaches the analyticity radius R = " << spec.radius << " of h";
    throw RadiusError(os.str());
  }
}

// Geometric tail estimate from the ratio of the last two terms.
double tail_bound(const std::vector<double>& a, double x) {
  const std::size_t n = a.size();
  if (n < 2 || a[n - 1] == 0.0) return 0.0;
  double last = std::abs(a[n - 1]) * std::pow(std::abs(x), double(n - 1));
  double r = a[n - 2] != 0.0 ? std::abs(a[n - 1] / a[n - 2]) * std::abs(x) : 1.0;
  return r < 1.0 ? last * r / (1.0 - r) : HUGE_VAL;
}
}  // namespace

SeriesValue h_series(const CouplingSpec& spec, double u) {
  check_radius(spec, u);
  SeriesValue out;
  double p = 1.0;
  for (std::size_t n = 0; n < spec.h_coeffs.size(); ++n) {
    out.value += spec.h_coeffs[n] * p;
    p *= u;
  }
  out.remainder_bound = tail_bound(spec.h_coeffs, u);
  return out;
}

double h_eval(const CouplingSpec& spec, double u) {
  check_radius(spec, u);
  // Horner from the top keeps the small-u terms accurate.
  double s = 0.0;
  for (std::size_t n = spec.h_coeffs.size(); n-- > 0;) s = s * u + spec.h_coeffs[n];
  return s;
}

double h_prime_eval(const CouplingSpec& spec, double u) {
  check_radius(spec, u);
  double s = 0.0;
  for (std::size_t n = spec.h_coeffs.size(); n-- > 1;) s = s * u + double(n) * spec.h_coeffs[n];
  return s;
}

double h_tilde_eval(const CouplingSpec& spec, double x) {
  if (x < 0.0) throw ValidationError("h_tilde is defined for x >= 0");
  check_radius(spec, x);
  double s = 0.0;
  for (std::size_t n = spec.h_coeffs.size(); n-- > 0;) s = s * x + std::abs(spec.h_coeffs[n]);
  return s;
}

}  // namespace landau
