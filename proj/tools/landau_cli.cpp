#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landau/config.hpp"
#include "landau/driver.hpp"
#include "landau/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Args {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
  landau::DriverOptions driver;
};

landau::RunConfig resolve_config(const Args& a) {
  if (!a.config_path.empty() && !a.preset.empty()) {
    throw landau::ValidationError("--config and --preset are mutually exclusive");
  }
  landau::RunConfig c = !a.config_path.empty() ? landau::load_config(a.config_path)
                        : !a.preset.empty()    ? landau::preset_config(a.preset)
                                               : landau::preset_config("vpme-1d-default");
  if (!a.overrides.empty()) {
    std::string text;
    for (const auto& o : a.overrides) text += o + "\n";
    c = landau::apply_overrides(c, text);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau damping verification toolkit for Vlasov-Poisson type models"};
  app.require_subcommand(1);
  Args args;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"penrose", "Penrose stability margin and winding numbers"},
      {"linear", "linearized density evolution with resolvent tables and decay fits"},
      {"simulate", "nonlinear or linearized spectral simulation"},
      {"verify", "generator-function lemma suite (exit 4 if any check fails)"},
      {"report", "penrose, linear and simulate with a merged summary"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config_path, "key = value configuration file");
    sub->add_option("--preset", args.preset, "shipped preset: vp, screened, vpme, vpme-1d-default");
    sub->add_option("--set", args.overrides, "override a key, e.g. --set eps=1e-4");
    sub->add_option("--out", args.driver.out, "output directory")->capture_default_str();
    sub->add_option("--seed", args.driver.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--threads", args.driver.threads, "worker threads")->capture_default_str();
    sub->add_option("--tol", args.driver.tol, "Picard tolerance of the linear engine")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    const landau::RunConfig config = resolve_config(args);
    const landau::DispatchResult res = landau::dispatch(subcommand, config, args.driver);
    std::cout << res.summary.dump(2) << "\n";
    return res.exit_code;
  } catch (const landau::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const landau::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
