#include "landau/transport.hpp"

#include <cmath>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/fft.hpp"

namespace landau {

namespace {
void phase_mixed(const TorusGrid& grid, std::vector<cplx>& mixed, double s) {
  const std::size_t nv = grid.nv_total();
  std::vector<Vec3> vel(nv);
  for (std::size_t iv = 0; iv < nv; ++iv) vel[iv] = grid.velocity(iv);
  for (std::size_t ik = 0; ik < grid.nx_total(); ++ik) {
    Mode k = grid.mode_of(ik);
    if (is_zero(k)) continue;
    cplx* row = mixed.data() + ik * nv;
    for (std::size_t iv = 0; iv < nv; ++iv) row[iv] *= std::polar(1.0, s * dot(k, vel[iv]));
  }
}
}  // namespace

void free_transport_mixed(const TorusGrid& grid, std::vector<cplx>& mixed, double dt) {
  phase_mixed(grid, mixed, -dt);
}

PhaseSpaceState free_transport_pullback(const PhaseSpaceState& state, PullbackDirection direction) {
  const double t = state.time;
  if (!std::isfinite(t)) throw ValidationError("pull-back requires a finite time");
  const Frame want_from = direction == PullbackDirection::lab_to_free ? Frame::lab : Frame::free_transport;
  if (state.frame != want_from) throw ValidationError("pull-back direction does not match the state frame");
  PhaseSpaceState out = state;
  out.frame = direction == PullbackDirection::lab_to_free ? Frame::free_transport : Frame::lab;
  if (t == 0.0) return out;
  const TorusGrid& g = state.grid;
  x_to_mixed(g, out.values);
  // Filamentation check: content of mode k is carried to |eta| ~ |k| t.
  double total = 0.0, lost = 0.0;
  const std::size_t nv = g.nv_total();
  for (std::size_t ik = 0; ik < g.nx_total(); ++ik) {
    double e = 0.0;
    for (std::size_t iv = 0; iv < nv; ++iv) e += std::norm(out.values[ik * nv + iv]);
    total += e;
    if (norm(g.mode_of(ik)) * std::abs(t) > g.eta_max()) lost += e;
  }
  if (total > 0.0 && lost > 1e-12 * total) {
    std::ostringstream os;
    os << "filamentation: modes with |k| t beyond the resolved eta band (" << g.eta_max() << ") carry "
       << lost / total << " of the energy at t=" << t;
    warn(os.str());
  }
  phase_mixed(g, out.values, direction == PullbackDirection::lab_to_free ? t : -t);
  mixed_to_x(g, out.values);
  return out;
}

void free_transport_step(PhaseSpaceState& state, double dt) {
  if (state.frame != Frame::lab) throw ValidationError("free transport acts on lab-frame states");
  x_to_mixed(state.grid, state.values);
  free_transport_mixed(state.grid, state.values, dt);
  mixed_to_x(state.grid, state.values);
  state.time += dt;
}

SpectralDensity density_of_mixed(const TorusGrid& grid, const std::vector<cplx>& mixed, double t) {
  SpectralDensity rho(grid.d, grid.n_x, t);
  const std::size_t nv = grid.nv_total();
  const double w = std::pow(grid.dv(), grid.d);
  for (std::size_t ik = 0; ik < grid.nx_total(); ++ik) {
    cplx s(0.0, 0.0);
    for (std::size_t iv = 0; iv < nv; ++iv) s += mixed[ik * nv + iv];
    rho.modes[ik] = s * w;
  }
  return rho;
}

SpectralDensity density_of(const PhaseSpaceState& state) {
  if (state.frame == Frame::lab) {
    std::vector<cplx> mixed = state.values;
    x_to_mixed(state.grid, mixed);
    return density_of_mixed(state.grid, mixed, state.time);
  }
  PhaseSpaceState lab = free_transport_pullback(state, PullbackDirection::free_to_lab);
  return density_of(lab);
}

cplx spectral_value(const PhaseSpaceState& state, const Mode& k, const Vec3& eta) {
  const TorusGrid& g = state.grid;
  long ik = g.index_of(k);
  if (ik < 0) return cplx(0.0, 0.0);
  // x-transform of the single mode row by direct summation over x.
  const std::size_t nv = g.nv_total();
  std::vector<cplx> row(nv, cplx(0.0, 0.0));
  const double wx = std::pow(g.dx(), g.d);
  for (std::size_t ix = 0; ix < g.nx_total(); ++ix) {
    cplx ph = std::polar(wx, -dot(k, g.position(ix)));
    for (std::size_t iv = 0; iv < nv; ++iv) row[iv] += ph * state.values[ix * nv + iv];
  }
  const double wv = std::pow(g.dv(), g.d);
  cplx s(0.0, 0.0);
  for (std::size_t iv = 0; iv < nv; ++iv) {
    Vec3 v = g.velocity(iv);
    s += row[iv] * std::polar(1.0, -(eta[0] * v[0] + eta[1] * v[1] + eta[2] * v[2]));
  }
  return s * wv;
}

}  // namespace landau
