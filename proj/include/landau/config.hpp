#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "landau/linear_damping.hpp"
#include "landau/vlasov.hpp"

namespace landau {

// Grammar: one "key = value" per line; '#' starts a comment; blank lines ignored.
// Lists are comma separated ("k0 = 1,0,0"). Unknown keys and repeated keys are rejected.
//
// Keys (defaults in parentheses):
//   model            vp | screened | vpme                    (vpme)
//   beta             overrides the model's screening constant
//   profile          maxwellian | two_bump | lorentzian | tabulated (maxwellian)
//   profile.width    thermal width                           (1)
//   profile.u0       two_bump separation                     (4)
//   profile.w        two_bump weight                         (0.5)
//   profile.theta    lorentzian width                        (1)
//   profile.file     tabulated mu_hat table
//   d, n_x, n_v, v_max                                       (1, 64, 256, 8)
//   dt, T, eps                                               (1/32, 50, 1e-3)
//   datum            single_mode | gevrey_bump | file        (single_mode)
//   datum.file       snapshot path for datum = file
//   k0               datum mode                              (1)
//   lambda1          datum radius                            (1)
//   mode             nonlinear | linearized                  (nonlinear)
//   filter           true | false                            (false)
//   gamma, sigma, alpha                                      (0.5, 4, 0.25)
//   audit            true | false                            (true)
//   audit.every, audit.lambda0, audit.delta                  (16, 0.25, 0.1)
//   snapshots        list of output times                    (empty)
//   penrose.k_max, penrose.step                              (8, 0.01)
//   linear.T, linear.dt, linear.k_max, linear.n_x            (20, 1/64, 4, 32)
//   allow_low_gamma  permit gamma <= 1/3 in nonlinear mode   (false)
struct RunConfig {
  std::string model = "vpme";
  std::string profile_name = "maxwellian";
  std::map<std::string, double> profile_parameters;
  std::string profile_file;
  SimConfig sim;
  int penrose_k_max = 8;
  double penrose_step = 0.01;
  LinearOptions linear;
  int linear_k_max = 4;
  bool allow_low_gamma = false;
  // Canonical key = value listing of every setting after defaults and overrides.
  std::map<std::string, std::string> resolved;

  // Throws ValidationError with a message naming the violated constraint.
  void validate() const;
  std::string canonical_text() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
// Presets: vp, screened, vpme, vpme-1d-default.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();
// Applies "key = value" lines over an existing configuration.
RunConfig apply_overrides(const RunConfig& base, const std::string& text);

EquilibriumProfile build_profile(const RunConfig& config);

struct RunManifest {
  std::string subcommand;
  std::string config_text;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string version;
  int threads = 1;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::vector<std::string> operations;  // module/operation pairs behind the emitted numbers
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
};
nlohmann::json to_json(const RunManifest& manifest);

std::string tool_version();

}  // namespace landau
