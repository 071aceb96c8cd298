#pragma once

#include <limits>
#include <string>
#include <vector>

namespace landau {

// Elliptic coupling -Delta U + beta U + h(U) = rho with h(u) = sum_{n>=2} a_n u^n.
struct CouplingSpec {
  std::string name = "vp";
  double beta = 0.0;
  std::vector<double> h_coeffs;  // a_0, a_1, a_2, ...; a_0 = a_1 = 0
  double radius = std::numeric_limits<double>::infinity();

  bool has_h() const;
  void validate() const;

  static CouplingSpec vp();        // beta = 0, h = 0
  static CouplingSpec screened();  // beta = 1, h = 0
  static CouplingSpec vpme();      // beta = 1, h(u) = e^u - 1 - u
  static CouplingSpec from_name(const std::string& name);
};

struct SeriesValue {
  double value = 0.0;
  double remainder_bound = 0.0;  // bound on the omitted tail
};

// Throws RadiusError when |u| >= R.
SeriesValue h_series(const CouplingSpec& spec, double u);
double h_eval(const CouplingSpec& spec, double u);
double h_prime_eval(const CouplingSpec& spec, double u);
// Majorant sum |a_n| x^n for 0 <= x < R.
double h_tilde_eval(const CouplingSpec& spec, double x);

}  // namespace landau
