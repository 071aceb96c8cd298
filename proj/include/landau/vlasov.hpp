#pragma once

#include <string>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/equilibrium.hpp"
#include "landau/gevrey.hpp"
#include "landau/grid.hpp"

namespace landau {

enum class SimMode { nonlinear, linearized };
enum class DatumKind { single_mode, gevrey_bump, file };

// Generator audits along the run at radius lambda(t) = lambda0 + lambda0 (1+t)^{-delta}.
struct AuditSchedule {
  bool enabled = false;
  int every = 16;  // steps between audits
  double lambda0 = 0.25;
  double delta = 0.1;
};

struct SimConfig {
  TorusGrid grid;
  CouplingSpec spec;
  EquilibriumProfile profile;
  double dt = 1.0 / 32.0;
  double T_final = 50.0;
  double eps = 1e-3;
  DatumKind datum = DatumKind::single_mode;
  Mode k0{1, 0, 0};
  double lambda1 = 1.0;         // Gevrey radius of the datum and of the reported G[f0]
  std::string datum_file;
  SimMode mode = SimMode::nonlinear;
  bool filter = false;
  double stability_budget = 10.0;  // warn when dt v_max k_max exceeds it
  GevreyParams params;             // gamma, sigma, alpha for datum and audits
  int j_max = -1;                  // derivative order in G; < 0 selects d
  AuditSchedule audit;
  std::vector<double> snapshot_times;
  double blowup_factor = 1e3;

  void validate() const;
};

struct InitialDatum {
  PhaseSpaceState f0;
  double G_lambda1 = 0.0;  // G[f0](lambda1) measured on the grid
  double G_target = 0.0;   // eps for gevrey_bump
};

InitialDatum make_initial_datum(const SimConfig& config);

struct StepInfo {
  double rho0 = 0.0;  // measured mean mode before it is dropped for the field solve
  int newton_iterations = 0;
};

// Strang splitting: half free transport, field solve, full velocity step, half free transport.
// With frozen_field set, E(x) per component (n_x^d samples each) replaces the field solve.
class StrangStepper {
 public:
  StrangStepper(const TorusGrid& grid, const CouplingSpec& spec, const EquilibriumProfile& profile, SimMode mode,
                bool filter = false);
  StepInfo step(PhaseSpaceState& state, double dt, const std::vector<std::vector<double>>* frozen_field = nullptr) const;

 private:
  void velocity_step(std::vector<cplx>& values, const std::vector<std::vector<double>>& E, double dt) const;

  TorusGrid grid_;
  CouplingSpec spec_;
  SimMode mode_;
  bool filter_;
  std::vector<double> mu_;
  std::vector<Vec3> grad_mu_;
};

StepInfo step_strang(PhaseSpaceState& state, double dt, const CouplingSpec& spec, const EquilibriumProfile& profile,
                     SimMode mode);

// E(x) component samples of a lab-frame state.
std::vector<std::vector<double>> electric_field_samples(const PhaseSpaceState& state, const CouplingSpec& spec);

struct AuditSample {
  double t = 0.0;
  double lambda = 0.0;
  double F_laplacian_U = 0.0;  // F[Delta U](t, lambda(t))
  double F_weighted = 0.0;     // F[Delta U](t, lambda(t)) <t>^{sigma-1}
  double G_g = 0.0;            // G[g(t)](lambda(t))
  Mode arg_k{0, 0, 0};
};

struct Trajectory {
  std::vector<double> t;
  std::vector<SpectralDensity> rho;
  std::vector<double> field_energy;  // int |E|^2 dx
  std::vector<double> mass;          // |rho_hat_0| as measured
  std::vector<double> l2;            // discrete L2 norm of f + mu
  std::vector<PhaseSpaceState> snapshots;
  std::vector<AuditSample> audits;
  double G_initial = 0.0;
  std::size_t steps = 0;
  PhaseSpaceState final_state;
};

Trajectory run(const SimConfig& config);

// int |E|^2 dx from the potential's spectral coefficients.
double field_energy(const SpectralDensity& U);

// G of the unit-amplitude d = 1 Gevrey bump, by adaptive quadrature.
double gevrey_bump_unit_G(double lambda1, const GevreyParams& params, const Mode& k0, int j_max);

}  // namespace landau
