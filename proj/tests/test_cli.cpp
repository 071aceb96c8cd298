#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("LANDAU_CLI");
  REQUIRE_MESSAGE(p != nullptr, "LANDAU_CLI must point at the command-line binary");
  return p;
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "landau_cli_test" / name;
  fs::remove_all(d);
  return d;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

// A short, coarse run that keeps each invocation well under a second.
const std::string kSmall = "--set n_x=16 --set n_v=64 --set T=2 --set linear.T=2 --set linear.k_max=2 --set audit=false";

}  // namespace

TEST_CASE("penrose writes its report and a manifest") {
  const fs::path out = scratch("penrose");
  CHECK(run("penrose --preset vp --out " + out.string()) == 0);
  const auto doc = load(out / "penrose.json");
  CHECK(doc.contains("kappa0"));
  const auto manifest = load(out / "manifest.json");
  CHECK(manifest["subcommand"] == "penrose");
  CHECK(manifest["version"] == "1.0.0");
  CHECK(manifest["config"].get<std::string>().find("model = vp") != std::string::npos);
}

TEST_CASE("an unstable narrow two-bump profile is reported without failing the command") {
  const fs::path out = scratch("two_bump");
  CHECK(run("penrose --preset vp --set profile=two_bump --set profile.u0=1 --set profile.width=0.25 --out " + out.string()) == 0);
  CHECK(load(out / "penrose.json")["winding_ok"] == false);
}

TEST_CASE("invalid configurations exit with code 2") {
  CHECK(run("simulate --set sigma=2 --out " + scratch("bad_sigma").string()) == 2);
  CHECK(run("simulate --set gamma=0.25 --out " + scratch("bad_gamma").string()) == 2);
  CHECK(run("simulate --set no_such_key=1 --out " + scratch("bad_key").string()) == 2);
  CHECK(run("simulate --preset nonsense --out " + scratch("bad_preset").string()) == 2);
  CHECK(run("simulate --config /nonexistent.cfg --out " + scratch("bad_file").string()) == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("low gamma runs when explicitly allowed") {
  const fs::path out = scratch("low_gamma");
  CHECK(run("simulate " + kSmall + " --set gamma=0.25 --set allow_low_gamma=true --out " + out.string()) == 0);
  CHECK(fs::exists(out / "simulation.json"));
}

TEST_CASE("verify exit code mirrors the lemma suite verdict") {
  const fs::path out = scratch("verify");
  const int code = run("verify --out " + out.string());
  const auto doc = load(out / "lemmas.json");
  CHECK(code == (doc["pass"].get<bool>() ? 0 : 4));
}

TEST_CASE("zero amplitude produces an identically zero density trajectory") {
  const fs::path out = scratch("zero");
  CHECK(run("simulate " + kSmall + " --set eps=0 --out " + out.string()) == 0);
  std::istringstream csv(slurp(out / "simulation.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    CHECK(std::stod(field) == 0.0);
    std::getline(row, field, ',');
    CHECK(std::stod(field) == 0.0);
    ++rows;
  }
  CHECK(rows > 0);
  CHECK(load(out / "simulation.json")["max_mass_mode"] == 0.0);
}

TEST_CASE("report runs every stage and repeats byte for byte") {
  const fs::path a = scratch("report_a"), b = scratch("report_b");
  CHECK(run("report " + kSmall + " --out " + a.string()) == 0);
  CHECK(run("report " + kSmall + " --out " + b.string()) == 0);
  for (const char* name : {"penrose.json", "linear.csv", "linear.json", "simulation.csv", "simulation.json", "report.json"}) {
    REQUIRE(fs::exists(a / name));
    CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name);
  }
}
