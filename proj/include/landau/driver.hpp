#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "landau/config.hpp"
#include "landau/linear_damping.hpp"

namespace landau {

struct DriverOptions {
  std::string out = "out";
  std::uint64_t seed = 12345;
  int threads = 1;
  double tol = 1e-10;  // Picard tolerance of the linear engine
};

struct DispatchResult {
  int exit_code = 0;  // 0 success, 4 failed assertion in verify
  nlohmann::json summary;
  RunManifest manifest;
};

// Subcommands: penrose, linear, simulate, verify, report. Artifacts go to options.out together with
// manifest.json. Validation problems throw ValidationError, numerical failures NumericalError.
DispatchResult dispatch(const std::string& subcommand, const RunConfig& config, const DriverOptions& options);

// Initial spectrum of the configured datum for the linear engine.
InitialSpectrum initial_spectrum(const SimConfig& config);

// Modes (j, 0, 0), j = 1..count, clipped to the lattice.
std::vector<Mode> axis_modes(int count, int n_x);

}  // namespace landau
