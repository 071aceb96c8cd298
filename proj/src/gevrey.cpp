#include "landau/gevrey.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

void GevreyParams::validate(int d) const {
  auto fail = [](const std::string& m) { throw ValidationError(m); };
  if (!(z >= 0.0)) fail("z >= 0 required for the analyticity radius");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma in (0, 1] required for the Gevrey index");
  if (!(sigma > 3.0)) fail("sigma > 3 required for the regularity exponent");
  if (!(alpha < 0.5)) fail("alpha < 1/2 required");
  if (!(sigma - alpha > d)) {
    std::ostringstream os;
    os << "sigma - alpha > d required (sigma=" << sigma << ", alpha=" << alpha << ", d=" << d << ")";
    fail(os.str());
  }
}

double japanese_bracket(const Mode& k, const Vec3& eta) {
  return std::sqrt(1.0 + norm2(k) + eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]);
}

double japanese_bracket(double k, double eta) { return std::sqrt(1.0 + k * k + eta * eta); }

double log_gevrey_weight(double bracket, const GevreyParams& p) {
  return p.z * std::pow(bracket, p.gamma) + p.sigma * std::log(bracket);
}

double log_gevrey_weight(const Mode& k, const Vec3& eta, const GevreyParams& p) {
  return log_gevrey_weight(japanese_bracket(k, eta), p);
}

namespace {
GevreyWeight from_log(double lw) {
  GevreyWeight w;
  w.log_value = lw;
  if (lw > kLogOverflow) {
    w.saturated = true;
    w.value = HUGE_VAL;
  } else {
    w.value = std::exp(lw);
  }
  return w;
}
}  // namespace

GevreyWeight gevrey_weight(const Mode& k, const Vec3& eta, const GevreyParams& p) {
  return from_log(log_gevrey_weight(k, eta, p));
}

GevreyWeight gevrey_weight(double k, double eta, const GevreyParams& p) {
  return from_log(log_gevrey_weight(japanese_bracket(k, eta), p));
}

}  // namespace landau
