#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "landau/config.hpp"
#include "landau/errors.hpp"

using namespace landau;

TEST_CASE("every preset parses and validates") {
  const auto names = preset_names();
  CHECK(names.size() == 4);
  for (const auto& n : names) {
    const RunConfig c = preset_config(n);
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(c.canonical_text().empty());
  }
  CHECK(preset_config("vp").sim.spec.beta == 0.0);
  CHECK_FALSE(preset_config("screened").sim.spec.has_h());
  CHECK(preset_config("vpme").sim.spec.has_h());
  CHECK_THROWS_AS(preset_config("nonsense"), ValidationError);
}

TEST_CASE("defaults apply when the text is empty") {
  const RunConfig c = parse_config_text("");
  CHECK(c.model == "vpme");
  CHECK(c.sim.grid.n_x == 64);
  CHECK(c.sim.grid.n_v == 256);
  CHECK(c.sim.grid.v_max == 8.0);
  CHECK(c.sim.dt == 1.0 / 32.0);
  CHECK(c.sim.T_final == 50.0);
  CHECK(c.sim.eps == 1e-3);
  CHECK(c.sim.params.gamma == 0.5);
  CHECK(c.sim.params.sigma == 4.0);
  CHECK(c.sim.params.alpha == 0.25);
  CHECK(c.sim.params.z == c.sim.lambda1);
}

TEST_CASE("comments, blank lines, fractions and lists are accepted") {
  const RunConfig c = parse_config_text("# run\n\nmodel = screened  # trailing\ndt = 1/64\nT = 10\nk0 = 2\n"
                                        "snapshots = 0, 2.5, 5\n");
  CHECK(c.model == "screened");
  CHECK(c.sim.dt == 1.0 / 64.0);
  CHECK(c.sim.k0[0] == 2);
  REQUIRE(c.sim.snapshot_times.size() == 3);
  CHECK(c.sim.snapshot_times[1] == 2.5);
}

TEST_CASE("malformed input is rejected with a validation error") {
  CHECK_THROWS_AS(parse_config_text("unknown_key = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("n_x = 32\nn_x = 64\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("n_x\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("dt = abc\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("dt = 1/0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("n_x = 3.5\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("audit = maybe\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("model = other\n"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/landau.cfg"), ValidationError);
}

TEST_CASE("weight parameters outside their ranges are rejected") {
  CHECK_THROWS_AS(parse_config_text("sigma = 2\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("alpha = 0.6\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("gamma = 1.5\n"), ValidationError);
}

TEST_CASE("low gamma needs an explicit override in nonlinear mode") {
  try {
    parse_config_text("gamma = 0.25\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("allow_low_gamma") != std::string::npos);
  }
  clear_warnings();
  const RunConfig c = parse_config_text("gamma = 0.25\nallow_low_gamma = true\naudit = false\n");
  CHECK(c.sim.params.gamma == 0.25);
  bool warned = false;
  for (const auto& w : warnings()) warned = warned || w.rfind("low gamma", 0) == 0;
  CHECK(warned);
  CHECK_NOTHROW(parse_config_text("gamma = 0.25\nmode = linearized\naudit = false\n"));
}

TEST_CASE("canonical text round-trips and overrides replace single keys") {
  const RunConfig a = preset_config("vpme-1d-default");
  const RunConfig b = parse_config_text(a.canonical_text());
  CHECK(a.canonical_text() == b.canonical_text());
  const RunConfig c = apply_overrides(a, "n_x = 32\neps = 1e-4\n");
  CHECK(c.sim.grid.n_x == 32);
  CHECK(c.sim.eps == 1e-4);
  CHECK(c.sim.grid.n_v == a.sim.grid.n_v);
}

TEST_CASE("config files load from disk") {
  const auto path = std::filesystem::temp_directory_path() / "landau_config_test.cfg";
  {
    std::ofstream out(path);
    out << "model = vp\nT = 4\n";
  }
  const RunConfig c = load_config(path.string());
  CHECK(c.model == "vp");
  CHECK(c.sim.T_final == 4.0);
  std::filesystem::remove(path);
}

TEST_CASE("profiles are built from their parameters") {
  const RunConfig tb = parse_config_text("profile = two_bump\nprofile.u0 = 3\n");
  const EquilibriumProfile p = build_profile(tb);
  CHECK(p.mu({3.0 / 2.0, 0, 0}) > 0.0);
  CHECK_THROWS_AS(parse_config_text("profile = two_bump\nprofile.w = 1.5\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("profile = tabulated\n"), ValidationError);
}
