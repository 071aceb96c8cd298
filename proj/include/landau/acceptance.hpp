#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace landau {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none
  std::string summary;      // one line with the deciding numbers
  nlohmann::json detail;
};

struct AcceptanceOptions {
  std::string out = "acceptance_out";
  int threads = 4;
  std::vector<int> only;  // empty runs every criterion
  std::function<void(const CriterionResult&)> on_result;
};

CriterionResult criterion_penrose();
CriterionResult criterion_resolvent_dual_route();
CriterionResult criterion_resolvent_decay();
CriterionResult criterion_representation();
CriterionResult criterion_linear_damping();
CriterionResult criterion_nonlinear_vpme();
CriterionResult criterion_cross_validation();
CriterionResult criterion_lemma_suite();
CriterionResult criterion_scattering();
CriterionResult criterion_determinism(const std::string& out_dir);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

}  // namespace landau
