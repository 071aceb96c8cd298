#pragma once

#include "landau/grid.hpp"

namespace landau {

// Weight parameters: radius z, Gevrey index gamma, regularity sigma, mode exponent alpha.
struct GevreyParams {
  double z = 0.0;
  double gamma = 0.5;
  double sigma = 4.0;
  double alpha = 0.25;

  // Throws ValidationError naming the violated inequality.
  void validate(int d) const;
};

// <k, eta> = sqrt(1 + |k|^2 + |eta|^2).
double japanese_bracket(const Mode& k, const Vec3& eta);
double japanese_bracket(double k, double eta);

// log A = z <k,eta>^gamma + sigma log <k,eta>.
double log_gevrey_weight(double bracket, const GevreyParams& p);
double log_gevrey_weight(const Mode& k, const Vec3& eta, const GevreyParams& p);

struct GevreyWeight {
  double value = 0.0;      // A, or +inf when saturated
  double log_value = 0.0;  // always finite
  bool saturated = false;  // log_value beyond double range
};

GevreyWeight gevrey_weight(const Mode& k, const Vec3& eta, const GevreyParams& p);
GevreyWeight gevrey_weight(double k, double eta, const GevreyParams& p);

// Largest log value that still converts to a finite double.
constexpr double kLogOverflow = 709.0;

}  // namespace landau
