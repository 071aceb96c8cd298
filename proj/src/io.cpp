#include "landau/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "landau/errors.hpp"
#include "landau/field_solver.hpp"

namespace landau {

namespace {

constexpr char kMagic[8] = {'L', 'D', 'S', 'N', 'A', 'P', '0', '1'};

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ValidationError("snapshot file truncated");
  return v;
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ValidationError("cannot open output file " + path);
  return out;
}

}  // namespace

void write_snapshot(const PhaseSpaceState& state, const std::string& path) {
  auto out = open_out(path, true);
  out.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(out, state.grid.d);
  put<std::int32_t>(out, state.grid.n_x);
  put<std::int32_t>(out, state.grid.n_v);
  put<std::int32_t>(out, 1);
  put<std::int32_t>(out, state.frame == Frame::lab ? 0 : 1);
  put<double>(out, state.grid.v_max);
  put<double>(out, state.time);
  out.write(reinterpret_cast<const char*>(state.values.data()),
            static_cast<std::streamsize>(state.values.size() * sizeof(cplx)));
  if (!out) throw ValidationError("failed writing snapshot " + path);
}

PhaseSpaceState read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open snapshot " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw ValidationError("not a snapshot file: " + path);
  TorusGrid g;
  g.d = get<std::int32_t>(in);
  g.n_x = get<std::int32_t>(in);
  g.n_v = get<std::int32_t>(in);
  const auto dtype = get<std::int32_t>(in);
  if (dtype != 1) throw ValidationError("unsupported snapshot dtype");
  const auto frame = get<std::int32_t>(in);
  g.v_max = get<double>(in);
  const double time = get<double>(in);
  g.validate();
  PhaseSpaceState s(g, time, frame == 0 ? Frame::lab : Frame::free_transport);
  in.read(reinterpret_cast<char*>(s.values.data()), static_cast<std::streamsize>(s.values.size() * sizeof(cplx)));
  if (!in) throw ValidationError("snapshot file truncated: " + path);
  return s;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string mode_label(const Mode& k, int d) {
  std::ostringstream os;
  os << k[0];
  for (int a = 1; a < d; ++a) os << ':' << k[a];
  return os.str();
}

namespace {

void csv_row(std::ofstream& out, double t, const std::string& k, cplx rho, cplx U) {
  out << format_number(t) << ',' << k << ',' << format_number(rho.real()) << ',' << format_number(rho.imag()) << ','
      << format_number(std::abs(rho)) << ',' << format_number(U.real()) << ',' << format_number(U.imag()) << '\n';
}

}  // namespace

void write_linear_csv(const LinearTrajectory& trajectory, const std::string& path) {
  auto out = open_out(path);
  out << "t,k,re_rho,im_rho,abs_rho,re_U,im_U\n";
  for (std::size_t m = 0; m < trajectory.modes.size(); ++m) {
    const std::string label = mode_label(trajectory.modes[m], trajectory.d);
    for (std::size_t i = 0; i < trajectory.t.size(); ++i) {
      csv_row(out, trajectory.t[i], label, trajectory.rho[m][i], trajectory.U[m][i]);
    }
  }
}

void write_simulation_csv(const Trajectory& trajectory, const CouplingSpec& spec, const std::vector<Mode>& modes,
                          const std::string& path) {
  auto out = open_out(path);
  out << "t,k,re_rho,im_rho,abs_rho,re_U,im_U\n";
  std::vector<SpectralDensity> U;
  for (const auto& rho : trajectory.rho) {
    SpectralDensity r = rho;
    r.modes[0] = 0.0;
    U.push_back(solve_poisson(r, spec).U);
  }
  for (const Mode& k : modes) {
    for (std::size_t i = 0; i < trajectory.t.size(); ++i) {
      const auto& rho = trajectory.rho[i];
      if (rho.index_of(k) < 0) throw ValidationError("requested output mode lies outside the grid");
      csv_row(out, trajectory.t[i], mode_label(k, rho.d), rho[k], U[i][k]);
    }
  }
}

void write_resolvent_csv(const ResolventTable& table, const std::string& path) {
  auto out = open_out(path);
  out << "t,k,re_K,im_K,abs_K\n";
  const std::string label = mode_label(table.k, table.k[2] != 0 ? 3 : (table.k[1] != 0 ? 2 : 1));
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    out << format_number(table.t[i]) << ',' << label << ',' << format_number(table.K[i].real()) << ','
        << format_number(table.K[i].imag()) << ',' << format_number(std::abs(table.K[i])) << '\n';
  }
}

nlohmann::json to_json(const PenroseReport& r, int d) {
  nlohmann::json j;
  j["kappa0"] = r.kappa0;
  j["boundary_min"] = r.boundary_min;
  j["winding_ok"] = r.winding_ok;
  j["beta"] = r.beta;
  j["k_max"] = r.k_max;
  j["worst_k"] = mode_label(r.worst_k, d);
  j["worst_lambda"] = {r.worst_lambda.real(), r.worst_lambda.imag()};
  nlohmann::json modes = nlohmann::json::array();
  for (std::size_t i = 0; i < r.k_scanned.size(); ++i) {
    modes.push_back({{"k", mode_label(r.k_scanned[i], d)}, {"winding", r.winding[i]}, {"min_abs_D", r.mode_minimum[i]}});
  }
  j["modes"] = modes;
  nlohmann::json unstable = nlohmann::json::array();
  for (const auto& k : r.unstable_modes) unstable.push_back(mode_label(k, d));
  j["unstable_modes"] = unstable;
  j["truncation"] = {{"t_max", r.t_max},
                     {"omega", r.omega},
                     {"boundary_step", r.boundary_step},
                     {"quadrature_panel", r.quadrature_panel},
                     {"tail_bound", r.tail_bound}};
  return j;
}

nlohmann::json to_json(const DecayFit& f) {
  return {{"ok", f.ok},        {"C", f.C},           {"rate", f.rate},   {"gamma", f.gamma}, {"residual", f.residual},
          {"t_begin", f.t_begin}, {"t_end", f.t_end}, {"points", f.points}, {"message", f.message}};
}

nlohmann::json to_json(const ResolventTable& t, bool with_samples) {
  nlohmann::json j;
  j["k"] = {t.k[0], t.k[1], t.k[2]};
  j["beta"] = t.beta;
  j["method"] = t.method == ResolventMethod::volterra ? "volterra" : "bromwich";
  j["fit_C"] = t.fit_C;
  j["fit_theta"] = t.fit_theta;
  j["fit"] = to_json(t.fit);
  if (t.method == ResolventMethod::bromwich) {
    j["error_estimate"] = t.error_estimate;
    j["gamma0"] = t.gamma0;
    j["omega"] = t.omega;
    j["step"] = t.step;
  }
  if (with_samples) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& v : t.K) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    j["t"] = t.t;
    j["re_K"] = re;
    j["im_K"] = im;
  }
  return j;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw ValidationError("failed writing " + path);
}

}  // namespace landau
