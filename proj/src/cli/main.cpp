#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "minsir/errors.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::int64_t seed = -1;       // <0: keep config value
  std::int64_t trials = -1;     // <0: keep config value
  bool quiet = false;
};

void attach_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "JSON run configuration")
      ->required();
  sub->add_option("--out", flags.out_path,
                  "output CSV path (overrides config; '-' for stdout)");
  sub->add_option("--seed", flags.seed, "override mc.seed");
  sub->add_option("--trials", flags.trials, "override mc.trials");
  sub->add_flag("--quiet", flags.quiet, "suppress status output");
}

int run(const std::string& command, const CommonFlags& flags) {
  minsir::cli::RunConfig cfg = minsir::cli::load_config(flags.config_path);

  std::string overrides;
  if (flags.seed >= 0) {
    cfg.mc.seed = static_cast<std::uint64_t>(flags.seed);
    overrides += "seed=" + std::to_string(flags.seed);
  }
  if (flags.trials >= 0) {
    cfg.mc_enabled = flags.trials > 0;
    cfg.mc.trials = flags.trials > 0 ? flags.trials : 1;
    if (!overrides.empty()) overrides += " ";
    overrides += "trials=" + std::to_string(flags.trials);
  }
  cfg.overrides_echo = overrides;

  const std::string out =
      !flags.out_path.empty() ? flags.out_path : cfg.output_path;

  std::size_t rows = 0;
  if (command == "min-cdf")
    rows = minsir::cli::cmd_min_cdf(cfg, out);
  else if (command == "power")
    rows = minsir::cli::cmd_power(cfg, out);
  else if (command == "rate")
    rows = minsir::cli::cmd_rate(cfg, out);
  else
    rows = minsir::cli::cmd_simulate(cfg, out);

  if (!flags.quiet)
    std::cerr << "wrote " << (out.empty() || out == "-" ? "<stdout>" : out)
              << " (" << rows << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "minimum-SIR statistics under kappa-mu shadowed fading: exact and "
      "limiting distributions, underlay power policy, multicast rate"};
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* sub_min = app.add_subcommand(
      "min-cdf", "exact, limiting and sampled CDF of the minimum SIR");
  CLI::App* sub_power = app.add_subcommand(
      "power", "secondary power policy sweep with outage check");
  CLI::App* sub_rate = app.add_subcommand(
      "rate", "ergodic multicast rate sweep, quadrature vs sampling");
  CLI::App* sub_sim = app.add_subcommand(
      "simulate", "Monte Carlo tables without analytic columns");
  for (CLI::App* sub : {sub_min, sub_power, sub_rate, sub_sim})
    attach_common(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits cleanly; usage errors map to 2
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const minsir::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const minsir::Error& e) {
    std::cerr << "numeric error: " << e.name() << ": " << e.what() << "\n";
    return 3;
  }
}
