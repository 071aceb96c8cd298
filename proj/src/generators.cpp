#include "landau/generators.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/fft.hpp"

namespace landau {

double default_eta_band(const TorusGrid& grid) { return kPi * grid.n_v / (2.0 * grid.v_max); }

FValue gen_F_report(const SpectralDensity& rho, double t, const GevreyParams& params, double eta_band) {
  double peak = 0.0;
  for (const auto& c : rho.modes) peak = std::max(peak, std::abs(c));
  if (std::abs(rho.modes.at(0)) > 1e-8 * peak + 1e-14) {
    throw ValidationError("F requires a mean-free density (rho_hat_0 = 0)");
  }
  FValue out;
  bool any = false;
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const Mode k = rho.mode_of(i);
    const double kn = norm(k);
    if (kn * std::abs(t) > eta_band) {
      ++out.excluded;
      continue;
    }
    any = true;
    const double a = std::abs(rho.modes[i]);
    if (a == 0.0) continue;
    const double lv =
        log_gevrey_weight(k, scaled(k, t), params) + std::log(a) - params.alpha * std::log(kn);
    if (lv > out.log_value) {
      out.log_value = lv;
      out.arg_k = k;
    }
  }
  if (!any) throw DomainError("no resolved lattice mode for F at this time");
  if (out.log_value > kLogOverflow) {
    std::ostringstream os;
    os << "F overflows double range (log F = " << out.log_value << ")";
    throw SaturationError(os.str());
  }
  out.value = std::isfinite(out.log_value) ? std::exp(out.log_value) : 0.0;
  return out;
}

double gen_F(const SpectralDensity& rho, double t, const GevreyParams& params, double eta_band) {
  return gen_F_report(rho, t, params, eta_band).value;
}

std::vector<std::array<int, 3>> multi_indices(int d, int order) {
  std::vector<std::array<int, 3>> out;
  const int o2 = d >= 2 ? order : 0, o3 = d >= 3 ? order : 0;
  for (int a = 0; a <= order; ++a)
    for (int b = 0; b <= o2; ++b)
      for (int c = 0; c <= o3; ++c)
        if (a + b + c <= order) out.push_back({a, b, c});
  return out;
}

double gen_G(const PhaseSpaceState& g, const GevreyParams& params, int j_max) {
  const TorusGrid& grid = g.grid;
  if (j_max < 0) j_max = grid.d;
  const double cell = std::pow(grid.deta(), grid.d);
  double total = 0.0;
  for (const auto& j : multi_indices(grid.d, j_max)) {
    PhaseSpaceState w = g;
    if (j[0] + j[1] + j[2] > 0) {
      for (std::size_t iv = 0; iv < grid.nv_total(); ++iv) {
        const Vec3 v = grid.velocity(iv);
        cplx factor(1.0, 0.0);
        for (int a = 0; a < grid.d; ++a) factor *= std::pow(cplx(0.0, -v[a]), j[a]);
        for (std::size_t ix = 0; ix < grid.nx_total(); ++ix) w.at(ix, iv) *= factor;
      }
    }
    const SpectralArray s = forward_transform(w);
    for (std::size_t ik = 0; ik < grid.nx_total(); ++ik) {
      const Mode k = grid.mode_of(ik);
      for (std::size_t ip = 0; ip < grid.nv_total(); ++ip) {
        const double a = std::norm(s.at(ik, ip));
        if (a == 0.0) continue;
        const double lv = 2.0 * log_gevrey_weight(k, grid.frequency(ip), params) + std::log(a);
        if (lv > kLogOverflow) {
          std::ostringstream os;
          os << "G integrand overflows double range (log term = " << lv << ")";
          throw SaturationError(os.str());
        }
        total += std::exp(lv) * cell;
      }
    }
  }
  if (!std::isfinite(total)) throw SaturationError("G overflows double range");
  return total;
}

}  // namespace landau
