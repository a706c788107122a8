#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minsir/errors.hpp"

namespace minsir::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double require_number(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    fail("missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

fading::KappaMuShadowedParams parse_fading(const ordered_json& j,
                                           const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  fading::KappaMuShadowedParams p;
  p.kappa = require_number(j, "kappa");
  p.mu = require_number(j, "mu");
  p.m = require_number(j, "m");
  p.mean_power = j.contains("mean_power") ? require_number(j, "mean_power")
                                          : 1.0;
  try {
    p.validate();
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
  return p;
}

sir::SirModel parse_model(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  sir::SirModel model;
  if (!j.contains("signal")) fail(where + ": missing 'signal'");
  model.signal = parse_fading(j["signal"], where + ".signal");
  if (j.contains("interferers")) {
    if (!j["interferers"].is_array() || j["interferers"].empty())
      fail(where + ": 'interferers' must be a nonempty array");
    for (const auto& q : j["interferers"])
      model.interferers.push_back(parse_fading(q, where + ".interferers[]"));
  } else if (j.contains("interferer")) {
    model.interferers.push_back(
        parse_fading(j["interferer"], where + ".interferer"));
  } else {
    fail(where + ": missing 'interferers' (or 'interferer')");
  }
  return model;
}

std::vector<double> parse_grid(const ordered_json& j) {
  std::vector<double> grid;
  if (j.contains("values")) {
    if (!j["values"].is_array()) fail("z_grid.values must be an array");
    for (const auto& v : j["values"]) {
      if (!v.is_number()) fail("z_grid.values must hold numbers");
      grid.push_back(v.get<double>());
    }
  } else {
    const double lo = require_number(j, "min");
    const double hi = require_number(j, "max");
    const int points = static_cast<int>(require_number(j, "points"));
    if (points < 1) fail("z_grid.points must be >= 1");
    if (!(lo > 0.0) || !(hi > lo)) fail("z_grid needs 0 < min < max");
    const std::string spacing = j.value("spacing", std::string("linear"));
    for (int i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0
                                   : static_cast<double>(i) / (points - 1);
      if (spacing == "log")
        grid.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
      else if (spacing == "linear")
        grid.push_back(lo + t * (hi - lo));
      else
        fail("z_grid.spacing must be 'linear' or 'log'");
    }
  }
  if (grid.empty()) fail("z_grid resolved to an empty grid");
  for (double z : grid)
    if (!(z > 0.0)) fail("z_grid values must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail("z_grid values must increase strictly");
  return grid;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(buf.str());
  } catch (const std::exception& e) {
    fail("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) fail("config root must be a JSON object");

  RunConfig cfg;
  cfg.config_echo = j.dump();
  cfg.scenario = j.value("scenario", std::string("unnamed"));

  if (j.contains("truncation")) {
    const auto& t = j["truncation"];
    if (t.contains("per_variable_cap"))
      cfg.truncation.per_variable_cap =
          static_cast<int>(require_number(t, "per_variable_cap"));
    if (t.contains("rel_tol"))
      cfg.truncation.rel_tol = require_number(t, "rel_tol");
    if (t.contains("abs_tol"))
      cfg.truncation.abs_tol = require_number(t, "abs_tol");
    try {
      cfg.truncation.validate();
    } catch (const Error& e) {
      fail(std::string("truncation: ") + e.what());
    }
  }

  if (j.contains("mc")) {
    const auto& m = j["mc"];
    if (m.contains("seed"))
      cfg.mc.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("trials"))
      cfg.mc.trials = m["trials"].get<long long>();
    if (m.contains("chunks"))
      cfg.mc.parallel_chunks = static_cast<int>(require_number(m, "chunks"));
    if (m.contains("secondary_threshold"))
      cfg.secondary_threshold = require_number(m, "secondary_threshold");
    if (cfg.mc.trials == 0) {
      cfg.mc_enabled = false;
      cfg.mc.trials = 1;  // keep the struct valid; sampled columns are off
    } else if (cfg.mc.trials < 0) {
      fail("mc.trials must be >= 0");
    }
    if (cfg.mc.parallel_chunks < 1) fail("mc.chunks must be >= 1");
  }

  if (j.contains("model")) cfg.model = parse_model(j["model"], "model");
  if (j.contains("k_users")) {
    cfg.k_users = static_cast<int>(require_number(j, "k_users"));
    if (cfg.k_users < 1) fail("k_users must be >= 1");
  }
  if (j.contains("z_grid")) cfg.z_grid = parse_grid(j["z_grid"]);

  if (j.contains("policy")) {
    const auto& p = j["policy"];
    policy::PowerPolicyProblem prob;
    prob.p_primary = db_to_linear(require_number(p, "pp_db"));
    prob.p0 = require_number(p, "p0");
    if (p.contains("gamma0"))
      prob.gamma0 = require_number(p, "gamma0");
    else if (p.contains("r0"))
      prob.gamma0 = std::pow(2.0, require_number(p, "r0")) - 1.0;
    else
      fail("policy: need 'gamma0' or 'r0'");
    prob.ps_max = db_to_linear(p.contains("ps_max_db")
                                   ? require_number(p, "ps_max_db")
                                   : 20.0);
    prob.m_users = static_cast<int>(require_number(p, "m_users"));
    if (!p.contains("primary")) fail("policy: missing 'primary' model");
    prob.primary_model = parse_model(p["primary"], "policy.primary");
    try {
      prob.validate();
    } catch (const Error& e) {
      fail(std::string("policy: ") + e.what());
    }
    cfg.policy = prob;
  }

  if (j.contains("rate")) {
    const auto& r = j["rate"];
    policy::RateProblem prob;
    prob.l_users = static_cast<int>(require_number(r, "l_users"));
    prob.p_primary = db_to_linear(require_number(r, "pp_db"));
    if (r.contains("ps_db")) {
      cfg.rate_ps_db = require_number(r, "ps_db");
      prob.p_secondary = db_to_linear(*cfg.rate_ps_db);
    }
    if (!r.contains("secondary")) fail("rate: missing 'secondary' model");
    prob.secondary_model = parse_model(r["secondary"], "rate.secondary");
    try {
      prob.validate();
    } catch (const Error& e) {
      fail(std::string("rate: ") + e.what());
    }
    cfg.rate = prob;
  }

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    SweepSpec sweep;
    if (!s.contains("axis") || !s["axis"].is_string())
      fail("sweep: missing string field 'axis'");
    sweep.axis = s["axis"].get<std::string>();
    if (!s.contains("values") || !s["values"].is_array() ||
        s["values"].empty())
      fail("sweep: 'values' must be a nonempty array");
    for (const auto& v : s["values"]) {
      if (!v.is_number()) fail("sweep.values must hold numbers");
      sweep.values.push_back(v.get<double>());
    }
    cfg.sweep = sweep;
  }

  if (j.contains("simulate")) {
    const auto& s = j["simulate"];
    cfg.simulate_mode = s.value("mode", std::string("sir"));
    if (cfg.simulate_mode != "sir" && cfg.simulate_mode != "min-sir" &&
        cfg.simulate_mode != "outage-rate")
      fail("simulate.mode must be 'sir', 'min-sir' or 'outage-rate'");
    if (s.contains("ps_db")) cfg.simulate_ps_db = require_number(s, "ps_db");
  }

  cfg.output_path = j.value("output", std::string());
  return cfg;
}

}  // namespace minsir::cli
