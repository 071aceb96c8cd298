#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "landau/grid.hpp"
#include "landau/linear_damping.hpp"
#include "landau/penrose.hpp"
#include "landau/vlasov.hpp"

namespace landau {

// Binary snapshot: magic "LDSNAP01", int32 d, n_x, n_v, dtype (1 = complex128), frame; float64 v_max, time;
// then size() complex samples as (re, im) float64 pairs, little-endian host order.
void write_snapshot(const PhaseSpaceState& state, const std::string& path);
PhaseSpaceState read_snapshot(const std::string& path);

// Columns t,k,re_rho,im_rho,abs_rho,re_U,im_U; k written as "k1" or "k1:k2:k3".
void write_linear_csv(const LinearTrajectory& trajectory, const std::string& path);
void write_simulation_csv(const Trajectory& trajectory, const CouplingSpec& spec, const std::vector<Mode>& modes,
                          const std::string& path);
// Columns t,k,re_K,im_K,abs_K.
void write_resolvent_csv(const ResolventTable& table, const std::string& path);

std::string mode_label(const Mode& k, int d);

nlohmann::json to_json(const PenroseReport& report, int d);
nlohmann::json to_json(const ResolventTable& table, bool with_samples = false);
nlohmann::json to_json(const DecayFit& fit);

void write_json(const nlohmann::json& doc, const std::string& path);

// Fixed formatting for every number written to CSV, independent of locale and thread count.
std::string format_number(double x);

}  // namespace landau
