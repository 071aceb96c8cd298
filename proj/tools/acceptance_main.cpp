#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landau/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-10"};
  landau::AcceptanceOptions options;
  app.add_option("--out", options.out, "directory for acceptance.json and run artifacts")->capture_default_str();
  app.add_option("--threads", options.threads, "worker threads")->capture_default_str();
  app.add_option("--only", options.only, "run only these criterion numbers");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  options.on_result = [&](const landau::CriterionResult& r) {
    std::printf("criterion %2d %-42s %s  [%.1f s] %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.summary.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  };
  const std::vector<landau::CriterionResult> results = landau::run_acceptance(options);
  std::printf("%d of %zu criteria passed\n", int(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 4;
}
