#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minsir/montecarlo.hpp"
#include "minsir/policy.hpp"
#include "minsir/sir.hpp"
#include "minsir/special.hpp"

namespace minsir::cli {

// Configuration or usage problem: maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
};

// Parsed run configuration. Sections are optional in the file; each command
// checks for the sections it needs and reports a ConfigError otherwise.
struct RunConfig {
  std::string scenario = "unnamed";
  special::TruncationControl truncation;
  mc::McConfig mc;
  double secondary_threshold = -1.0;  // <0: default to policy gamma0
  bool mc_enabled = true;             // "trials": 0 disables sampled columns

  std::optional<sir::SirModel> model;
  int k_users = 1;
  std::vector<double> z_grid;

  std::optional<policy::PowerPolicyProblem> policy;
  std::optional<policy::RateProblem> rate;
  std::optional<double> rate_ps_db;  // explicit secondary power for `rate`
  std::optional<SweepSpec> sweep;
  std::string simulate_mode = "sir";  // sir | min-sir | outage-rate
  std::optional<double> simulate_ps_db;

  std::string output_path;      // from file; --out overrides
  std::string config_echo;      // single-line JSON of the file, for '#' rows
  std::string overrides_echo;   // CLI overrides applied, for '#' rows
};

// Loads and validates the JSON file at path. Any malformed or semantically
// invalid content raises ConfigError (including model parameter violations,
// surfaced at load time rather than mid-run).
RunConfig load_config(const std::string& path);

double db_to_linear(double db);
double linear_to_db(double v);

}  // namespace minsir::cli
