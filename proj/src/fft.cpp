#include "landau/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "landau/errors.hpp"

namespace landau {
namespace {

using PlanKey = std::tuple<int, int, int, int, int>;

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(int d, int n_x, int n_v, Axes axes, int sign) {
  PlanKey key{d, n_x, n_v, static_cast<int>(axes), sign};
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::size_t nx_tot = 1, nv_tot = 1;
  for (int i = 0; i < d; ++i) {
    nx_tot *= static_cast<std::size_t>(n_x);
    nv_tot *= static_cast<std::size_t>(n_v);
  }
  std::vector<cplx> scratch(nx_tot * nv_tot);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = nullptr;
  if (axes == Axes::all) {
    int dims[6];
    for (int i = 0; i < d; ++i) {
      dims[i] = n_x;
      dims[d + i] = n_v;
    }
    plan = fftw_plan_dft(2 * d, dims, buf, buf, sign, flags);
  } else if (axes == Axes::x) {
    int dims[3] = {n_x, n_x, n_x};
    plan = fftw_plan_many_dft(d, dims, static_cast<int>(nv_tot), buf, nullptr, static_cast<int>(nv_tot), 1, buf,
                              nullptr, static_cast<int>(nv_tot), 1, sign, flags);
  } else {
    int dims[3] = {n_v, n_v, n_v};
    plan = fftw_plan_many_dft(d, dims, static_cast<int>(nx_tot), buf, nullptr, 1, static_cast<int>(nv_tot), buf,
                              nullptr, 1, static_cast<int>(nv_tot), sign, flags);
  }
  if (!plan) throw NumericalError("FFTW plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

void execute(fftw_plan plan, std::vector<cplx>& data) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

// (-1)^p sign pattern for the velocity axes: exp(i eta_p v_max) = (-1)^p.
void apply_velocity_parity(const TorusGrid& grid, std::vector<cplx>& data) {
  const std::size_t nv = grid.nv_total();
  std::vector<double> parity(nv);
  for (std::size_t iv = 0; iv < nv; ++iv) {
    auto a = grid.v_axes(iv);
    int s = 0;
    for (int i = 0; i < grid.d; ++i) s += a[i];
    parity[iv] = (s % 2 == 0) ? 1.0 : -1.0;
  }
  for (std::size_t ix = 0; ix < grid.nx_total(); ++ix)
    for (std::size_t iv = 0; iv < nv; ++iv) data[ix * nv + iv] *= parity[iv];
}

void scale(std::vector<cplx>& data, double s) {
  for (auto& z : data) z *= s;
}

}  // namespace

void fft_inplace(const TorusGrid& grid, std::vector<cplx>& data, Axes axes, int sign) {
  grid.validate();
  if (data.size() != grid.size()) throw ValidationError("transform input size does not match grid");
  execute(get_plan(grid.d, grid.n_x, grid.n_v, axes, sign), data);
}

void x_to_mixed(const TorusGrid& grid, std::vector<cplx>& data) {
  fft_inplace(grid, data, Axes::x, FFTW_FORWARD);
  scale(data, std::pow(grid.dx(), grid.d));
}

void mixed_to_x(const TorusGrid& grid, std::vector<cplx>& data) {
  fft_inplace(grid, data, Axes::x, FFTW_BACKWARD);
  scale(data, std::pow(1.0 / kTwoPi, grid.d));
}

void v_to_eta(const TorusGrid& grid, std::vector<cplx>& data) {
  fft_inplace(grid, data, Axes::v, FFTW_FORWARD);
  apply_velocity_parity(grid, data);
  scale(data, std::pow(grid.dv(), grid.d));
}

void eta_to_v(const TorusGrid& grid, std::vector<cplx>& data) {
  apply_velocity_parity(grid, data);
  fft_inplace(grid, data, Axes::v, FFTW_BACKWARD);
  scale(data, std::pow(grid.deta() / kTwoPi, grid.d));
}

SpectralArray forward_transform(const PhaseSpaceState& state) {
  for (const auto& z : state.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("forward_transform: state contains non-finite values");
  SpectralArray out{state.grid, state.values, state.time, state.frame};
  fft_inplace(state.grid, out.values, Axes::all, FFTW_FORWARD);
  apply_velocity_parity(state.grid, out.values);
  scale(out.values, std::pow(state.grid.dx() * state.grid.dv(), state.grid.d));
  return out;
}

PhaseSpaceState inverse_transform(const SpectralArray& spectrum) {
  PhaseSpaceState out(spectrum.grid, spectrum.time, spectrum.frame);
  out.values = spectrum.values;
  apply_velocity_parity(spectrum.grid, out.values);
  fft_inplace(spectrum.grid, out.values, Axes::all, FFTW_BACKWARD);
  scale(out.values, std::pow(spectrum.grid.deta() / (kTwoPi * kTwoPi), spectrum.grid.d));
  return out;
}

namespace {
TorusGrid field_grid(int d, int n_x) {
  TorusGrid g;
  g.d = d;
  g.n_x = n_x;
  g.n_v = 1;
  return g;
}

void field_fft(int d, int n_x, std::vector<cplx>& data, int sign) {
  if (d < 1 || d > 3) throw ValidationError("field dimension must be 1..3");
  execute(get_plan(d, n_x, 1, Axes::x, sign), data);
}
}  // namespace

SpectralDensity field_to_spectral(const std::vector<cplx>& values, int d, int n_x, double t) {
  SpectralDensity out(d, n_x, t);
  if (values.size() != out.size()) throw ValidationError("field size does not match lattice");
  out.modes = values;
  field_fft(d, n_x, out.modes, FFTW_FORWARD);
  scale(out.modes, std::pow(field_grid(d, n_x).dx(), d));
  return out;
}

SpectralDensity field_to_spectral(const std::vector<double>& values, int d, int n_x, double t) {
  std::vector<cplx> c(values.begin(), values.end());
  return field_to_spectral(c, d, n_x, t);
}

std::vector<cplx> field_to_physical_complex(const SpectralDensity& field) {
  std::vector<cplx> out = field.modes;
  field_fft(field.d, field.n_x, out, FFTW_BACKWARD);
  scale(out, std::pow(1.0 / kTwoPi, field.d));
  return out;
}

std::vector<double> field_to_physical(const SpectralDensity& field) {
  auto c = field_to_physical_complex(field);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

}  // namespace landau
