#pragma once

#include <string>

#include "config.hpp"

namespace minsir::cli {

// Each command renders one CSV table described in the README and returns
// the number of data rows written. Missing config sections raise
// ConfigError; numeric failures propagate as minsir::Error.
std::size_t cmd_min_cdf(const RunConfig& cfg, const std::string& out_path);
std::size_t cmd_power(const RunConfig& cfg, const std::string& out_path);
std::size_t cmd_rate(const RunConfig& cfg, const std::string& out_path);
std::size_t cmd_simulate(const RunConfig& cfg, const std::string& out_path);

}  // namespace minsir::cli
