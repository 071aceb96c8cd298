#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace landau {

using cplx = std::complex<double>;
using Mode = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double norm2(const Mode& k);
double norm(const Mode& k);
double norm(const Vec3& v);
double dot(const Mode& k, const Vec3& v);
Vec3 scaled(const Mode& k, double s);
bool is_zero(const Mode& k);
Mode negated(const Mode& k);

// Phase-space grid on T^d x [-v_max, v_max)^d.
// x_j = 2*pi*j/n_x, v_m = -v_max + m*dv, dv = 2*v_max/n_v, deta = pi/v_max.
// Flat storage is row-major over (x_1..x_d, v_1..v_d).
struct TorusGrid {
  int d = 1;
  int n_x = 64;
  int n_v = 256;
  double v_max = 8.0;

  void validate() const;

  std::size_t nx_total() const;
  std::size_t nv_total() const;
  std::size_t size() const { return nx_total() * nv_total(); }

  double dx() const { return kTwoPi / n_x; }
  double dv() const { return 2.0 * v_max / n_v; }
  double deta() const { return kPi / v_max; }
  // Largest |eta| on the dual grid.
  double eta_max() const { return deta() * (n_v / 2); }

  double x(int j) const { return dx() * j; }
  double v(int m) const { return -v_max + dv() * m; }
  // Signed frequency for FFT index j of an axis with n points.
  static int signed_index(int j, int n) { return j < n / 2 ? j : j - n; }
  double eta(int p) const { return deta() * signed_index(p, n_v); }

  // Per-axis indices of a flat x (or v) index.
  std::array<int, 3> x_axes(std::size_t ix) const;
  std::array<int, 3> v_axes(std::size_t iv) const;
  // Lattice mode of FFT-ordered flat x index.
  Mode mode_of(std::size_t ix) const;
  // Flat FFT-ordered x index of a lattice mode, or -1 if outside the lattice.
  long index_of(const Mode& k) const;
  Vec3 velocity(std::size_t iv) const;
  Vec3 frequency(std::size_t iv) const;
  Vec3 position(std::size_t ix) const;

  bool operator==(const TorusGrid& o) const {
    return d == o.d && n_x == o.n_x && n_v == o.n_v && v_max == o.v_max;
  }
};

enum class Frame { lab, free_transport };

struct PhaseSpaceState {
  TorusGrid grid;
  std::vector<cplx> values;
  double time = 0.0;
  Frame frame = Frame::lab;

  PhaseSpaceState() = default;
  explicit PhaseSpaceState(const TorusGrid& g, double t = 0.0, Frame f = Frame::lab);
  cplx& at(std::size_t ix, std::size_t iv) { return values[ix * grid.nv_total() + iv]; }
  const cplx& at(std::size_t ix, std::size_t iv) const { return values[ix * grid.nv_total() + iv]; }
  // Discrete L2 norm sqrt(sum |f|^2 dx^d dv^d).
  double l2_norm() const;
};

// Continuous-transform approximation f_hat(k, eta) on the dual lattice, FFT ordered in every axis.
struct SpectralArray {
  TorusGrid grid;
  std::vector<cplx> values;
  double time = 0.0;
  Frame frame = Frame::lab;
  cplx& at(std::size_t ik, std::size_t ip) { return values[ik * grid.nv_total() + ip]; }
  const cplx& at(std::size_t ik, std::size_t ip) const { return values[ik * grid.nv_total() + ip]; }
};

// Fourier coefficients rho_hat_k = int_T rho(x) e^{-ikx} dx on the n_x^d lattice, FFT ordered.
struct SpectralDensity {
  int d = 1;
  int n_x = 64;
  double t = 0.0;
  std::vector<cplx> modes;

  SpectralDensity() = default;
  SpectralDensity(int d_, int n_x_, double t_ = 0.0);
  std::size_t size() const { return modes.size(); }
  Mode mode_of(std::size_t i) const;
  long index_of(const Mode& k) const;
  cplx operator[](const Mode& k) const;
};

// Thread count used by per-mode parallel loops. Results never depend on it.
void set_thread_count(int n);
int thread_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace landau
