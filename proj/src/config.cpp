#include "landau/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "landau/asymptotics.hpp"
#include "landau/errors.hpp"

namespace landau {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> table = {
      {"model", "vpme"},         {"beta", ""},
      {"profile", "maxwellian"}, {"profile.width", "1"},
      {"profile.u0", "4"},       {"profile.w", "0.5"},
      {"profile.theta", "1"},    {"profile.file", ""},
      {"d", "1"},                {"n_x", "64"},
      {"n_v", "256"},            {"v_max", "8"},
      {"dt", "1/32"},            {"T", "50"},
      {"eps", "1e-3"},           {"datum", "single_mode"},
      {"datum.file", ""},        {"k0", "1"},
      {"lambda1", "1"},          {"mode", "nonlinear"},
      {"filter", "false"},       {"gamma", "0.5"},
      {"sigma", "4"},            {"alpha", "0.25"},
      {"audit", "true"},         {"audit.every", "16"},
      {"audit.lambda0", "0.25"}, {"audit.delta", "0.1"},
      {"snapshots", ""},         {"penrose.k_max", "8"},
      {"penrose.step", "0.01"},  {"linear.T", "20"},
      {"linear.dt", "1/64"},     {"linear.k_max", "4"},
      {"linear.n_x", "32"},      {"allow_low_gamma", "false"},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_pairs(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!defaults().count(key)) throw ValidationError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    if (out.count(key)) throw ValidationError("config line " + std::to_string(number) + ": repeated key '" + key + "'");
    out[key] = value;
  }
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  auto whole = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ValidationError("key '" + key + "': '" + value + "' is not a number");
    return x;
  };
  const auto slash = value.find('/');
  if (slash == std::string::npos) return whole(trim(value));
  const double den = whole(trim(value.substr(slash + 1)));
  if (den == 0.0) throw ValidationError("key '" + key + "': zero denominator");
  return whole(trim(value.substr(0, slash))) / den;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_number(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ValidationError("key '" + key + "': integer expected");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("key '" + key + "': expected true or false");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(key, trim(item)));
  return out;
}

RunConfig from_map(const std::map<std::string, std::string>& m) {
  RunConfig c;
  c.resolved = m;
  auto num = [&](const char* k) { return parse_number(k, m.at(k)); };
  auto integer = [&](const char* k) { return parse_int(k, m.at(k)); };
  auto flag = [&](const char* k) { return parse_bool(k, m.at(k)); };

  c.model = m.at("model");
  SimConfig& s = c.sim;
  s.spec = CouplingSpec::from_name(c.model);
  if (!m.at("beta").empty()) s.spec.beta = num("beta");
  s.grid.d = integer("d");
  s.grid.n_x = integer("n_x");
  s.grid.n_v = integer("n_v");
  s.grid.v_max = num("v_max");
  s.dt = num("dt");
  s.T_final = num("T");
  s.eps = num("eps");

  const std::string datum = m.at("datum");
  if (datum == "single_mode") s.datum = DatumKind::single_mode;
  else if (datum == "gevrey_bump") s.datum = DatumKind::gevrey_bump;
  else if (datum == "file") s.datum = DatumKind::file;
  else throw ValidationError("key 'datum': expected single_mode, gevrey_bump or file");
  s.datum_file = m.at("datum.file");

  const std::vector<double> k0 = parse_list("k0", m.at("k0"));
  if (k0.empty() || k0.size() > 3) throw ValidationError("key 'k0': one to three integer components expected");
  s.k0 = {0, 0, 0};
  for (std::size_t a = 0; a < k0.size(); ++a) {
    if (k0[a] != std::floor(k0[a])) throw ValidationError("key 'k0': integer components expected");
    s.k0[a] = static_cast<int>(k0[a]);
  }
  s.lambda1 = num("lambda1");

  const std::string mode = m.at("mode");
  if (mode == "nonlinear") s.mode = SimMode::nonlinear;
  else if (mode == "linearized") s.mode = SimMode::linearized;
  else throw ValidationError("key 'mode': expected nonlinear or linearized");
  s.filter = flag("filter");

  s.params.gamma = num("gamma");
  s.params.sigma = num("sigma");
  s.params.alpha = num("alpha");
  s.params.z = s.lambda1;
  s.audit.enabled = flag("audit");
  s.audit.every = integer("audit.every");
  s.audit.lambda0 = num("audit.lambda0");
  s.audit.delta = num("audit.delta");
  s.snapshot_times = parse_list("snapshots", m.at("snapshots"));

  c.profile_name = m.at("profile");
  c.profile_parameters = {{"width", num("profile.width")},
                          {"u0", num("profile.u0")},
                          {"w", num("profile.w")},
                          {"theta", num("profile.theta")}};
  c.profile_file = m.at("profile.file");

  c.penrose_k_max = integer("penrose.k_max");
  c.penrose_step = num("penrose.step");
  c.linear.T = num("linear.T");
  c.linear.dt = num("linear.dt");
  c.linear.n_x = integer("linear.n_x");
  c.linear_k_max = integer("linear.k_max");
  c.allow_low_gamma = flag("allow_low_gamma");

  const bool low_gamma = s.mode == SimMode::nonlinear && s.params.gamma <= 1.0 / 3.0;
  if (low_gamma && c.allow_low_gamma && s.audit.enabled &&
      !(3.0 * s.params.gamma > 1.0 + 2.0 * s.audit.delta)) {
    s.audit.enabled = false;
    c.resolved["audit"] = "false";
  }
  s.profile = build_profile(c);
  return c;
}

const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> table = {
      {"vp", "model = vp\n"},
      {"screened", "model = screened\n"},
      {"vpme", "model = vpme\n"},
      {"vpme-1d-default",
       "model = vpme\nd = 1\nn_x = 64\nn_v = 256\nv_max = 8\ndt = 1/32\nT = 50\neps = 1e-3\n"
       "datum = single_mode\nk0 = 1\naudit = true\n"},
  };
  return table;
}

}  // namespace

EquilibriumProfile build_profile(const RunConfig& c) {
  const int d = c.sim.grid.d;
  const auto& p = c.profile_parameters;
  auto get = [&](const char* k) { return p.count(k) ? p.at(k) : 0.0; };
  if (c.profile_name == "maxwellian") {
    if (!(get("width") > 0.0)) throw ValidationError("profile.width > 0 required");
    return build_maxwellian(d, get("width"));
  }
  if (d != 1 && c.profile_name != "maxwellian") {
    throw ValidationError("profile '" + c.profile_name + "' is defined for d = 1 only");
  }
  if (c.profile_name == "two_bump") {
    if (!(get("w") > 0.0 && get("w") < 1.0)) throw ValidationError("profile.w in (0, 1) required");
    if (!(get("width") > 0.0)) throw ValidationError("profile.width > 0 required");
    return build_two_bump(get("u0"), get("w"), get("width"));
  }
  if (c.profile_name == "lorentzian") {
    if (!(get("theta") > 0.0)) throw ValidationError("profile.theta > 0 required");
    return build_lorentzian(get("theta"));
  }
  if (c.profile_name == "tabulated") {
    if (c.profile_file.empty()) throw ValidationError("profile = tabulated needs profile.file");
    return load_tabulated_profile(c.profile_file);
  }
  throw ValidationError("key 'profile': expected maxwellian, two_bump, lorentzian or tabulated");
}

void RunConfig::validate() const {
  const SimConfig& s = sim;
  s.params.validate(s.grid.d);
  if (s.mode == SimMode::nonlinear && s.params.gamma <= 1.0 / 3.0) {
    if (!allow_low_gamma) {
      throw ValidationError(
          "gamma in (1/3, 1] required for nonlinear damping; set allow_low_gamma = true to run anyway");
    }
    warn("low gamma: gamma <= 1/3 lies outside the nonlinear damping range (1/3, 1]; running by request");
  }
  s.validate();
  if (penrose_k_max < 1) throw ValidationError("penrose.k_max >= 1 required");
  if (!(penrose_step > 0.0)) throw ValidationError("penrose.step > 0 required");
  if (!(linear.T > 0.0) || !(linear.dt > 0.0)) throw ValidationError("linear.T > 0 and linear.dt > 0 required");
  if (linear_k_max < 1) throw ValidationError("linear.k_max >= 1 required");
  if (linear.n_x < 4 || linear.n_x % 2 != 0) throw ValidationError("linear.n_x even and >= 4 required");
  if (s.spec.has_h() && !(s.spec.beta > 0.0)) throw ValidationError("beta > 0 required when h is nonzero");
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : resolved) os << k << " = " << v << "\n";
  return os.str();
}

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> m = defaults();
  for (const auto& [k, v] : parse_pairs(text)) m[k] = v;
  RunConfig c = from_map(m);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

RunConfig preset_config(const std::string& name) {
  const auto it = preset_texts().find(name);
  if (it == preset_texts().end()) {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ValidationError("unknown preset '" + name + "' (available: " + names + ")");
  }
  return parse_config_text(it->second);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : preset_texts()) out.push_back(k);
  return out;
}

RunConfig apply_overrides(const RunConfig& base, const std::string& text) {
  std::map<std::string, std::string> m = base.resolved;
  for (const auto& [k, v] : parse_pairs(text)) m[k] = v;
  RunConfig c = from_map(m);
  c.validate();
  return c;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"subcommand", m.subcommand}, {"config", m.config_text},     {"seed", m.seed},
          {"output_dir", m.output_dir}, {"version", m.version},        {"threads", m.threads},
          {"wall_seconds", m.wall_seconds}, {"steps", m.steps},       {"operations", m.operations},
          {"artifacts", m.artifacts},   {"warnings", m.warnings}};
}

std::string tool_version() { return "1.0.0"; }

}  // namespace landau
