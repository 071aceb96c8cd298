#include "landau/grid.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "landau/errors.hpp"

namespace landau {

double norm2(const Mode& k) { return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]; }
double norm(const Mode& k) { return std::sqrt(norm2(k)); }
double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
double dot(const Mode& k, const Vec3& v) { return k[0] * v[0] + k[1] * v[1] + k[2] * v[2]; }
Vec3 scaled(const Mode& k, double s) { return {k[0] * s, k[1] * s, k[2] * s}; }
bool is_zero(const Mode& k) { return k[0] == 0 && k[1] == 0 && k[2] == 0; }
Mode negated(const Mode& k) { return {-k[0], -k[1], -k[2]}; }

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t ipow(int b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
  return r;
}

std::array<int, 3> split(std::size_t flat, int n, int d) {
  std::array<int, 3> out{0, 0, 0};
  for (int a = d - 1; a >= 0; --a) {
    out[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return out;
}
}  // namespace

void TorusGrid::validate() const {
  if (d < 1 || d > 3) throw ValidationError("grid dimension d must be 1, 2 or 3 (got " + std::to_string(d) + ")");
  if (!power_of_two(n_x) || n_x < 2) throw ValidationError("n_x must be a power of two >= 2 (got " + std::to_string(n_x) + ")");
  if (!power_of_two(n_v) || n_v < 2) throw ValidationError("n_v must be a power of two >= 2 (got " + std::to_string(n_v) + ")");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw ValidationError("v_max must be positive");
}

std::size_t TorusGrid::nx_total() const { return ipow(n_x, d); }
std::size_t TorusGrid::nv_total() const { return ipow(n_v, d); }

std::array<int, 3> TorusGrid::x_axes(std::size_t ix) const { return split(ix, n_x, d); }
std::array<int, 3> TorusGrid::v_axes(std::size_t iv) const { return split(iv, n_v, d); }

Mode TorusGrid::mode_of(std::size_t ix) const {
  auto a = x_axes(ix);
  Mode k{0, 0, 0};
  for (int i = 0; i < d; ++i) k[i] = signed_index(a[i], n_x);
  return k;
}

long TorusGrid::index_of(const Mode& k) const {
  long idx = 0;
  for (int i = 0; i < d; ++i) {
    if (k[i] < -n_x / 2 || k[i] >= n_x / 2) return -1;
    idx = idx * n_x + (k[i] < 0 ? k[i] + n_x : k[i]);
  }
  for (int i = d; i < 3; ++i)
    if (k[i] != 0) return -1;
  return idx;
}

Vec3 TorusGrid::velocity(std::size_t iv) const {
  auto a = v_axes(iv);
  Vec3 out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = v(a[i]);
  return out;
}

Vec3 TorusGrid::frequency(std::size_t iv) const {
  auto a = v_axes(iv);
  Vec3 out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = eta(a[i]);
  return out;
}

Vec3 TorusGrid::position(std::size_t ix) const {
  auto a = x_axes(ix);
  Vec3 out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = x(a[i]);
  return out;
}

PhaseSpaceState::PhaseSpaceState(const TorusGrid& g, double t, Frame f)
    : grid(g), values(g.size(), cplx(0.0, 0.0)), time(t), frame(f) {}

double PhaseSpaceState::l2_norm() const {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return std::sqrt(s * std::pow(grid.dx() * grid.dv(), grid.d));
}

SpectralDensity::SpectralDensity(int d_, int n_x_, double t_) : d(d_), n_x(n_x_), t(t_) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(n_x);
  modes.assign(n, cplx(0.0, 0.0));
}

Mode SpectralDensity::mode_of(std::size_t i) const {
  TorusGrid g;
  g.d = d;
  g.n_x = n_x;
  return g.mode_of(i);
}

long SpectralDensity::index_of(const Mode& k) const {
  TorusGrid g;
  g.d = d;
  g.n_x = n_x;
  return g.index_of(k);
}

cplx SpectralDensity::operator[](const Mode& k) const {
  long i = index_of(k);
  return i < 0 ? cplx(0.0, 0.0) : modes[static_cast<std::size_t>(i)];
}

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
  if (n < 1) throw ValidationError("thread count must be >= 1");
  g_threads = n;
}

int thread_count() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int nt = std::min<int>(g_threads, static_cast<int>(n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next++;
        if (i >= n || failed) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace landau
