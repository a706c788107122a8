#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "config.hpp"

namespace minsir::cli {

std::string CsvWriter::format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& command, const RunConfig& cfg,
                     const std::vector<std::string>& columns) {
  header_ += "# minsir " + command + "\n";
  header_ += "# scenario: " + cfg.scenario + "\n";
  header_ += "# config: " + cfg.config_echo + "\n";
  header_ += "# overrides: " +
             (cfg.overrides_echo.empty() ? std::string("none")
                                         : cfg.overrides_echo) +
             "\n";
  header_ += "# seed: " + std::to_string(cfg.mc.seed) +
             " trials: " + std::to_string(cfg.mc_enabled ? cfg.mc.trials : 0) +
             " chunks: " + std::to_string(cfg.mc.parallel_chunks) + "\n";
  columns_ = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    body_ += columns[i];
    body_ += (i + 1 < columns.size()) ? ',' : '\n';
  }
}

void CsvWriter::add_comment(const std::string& text) {
  header_ += "# " + text + "\n";
}

void CsvWriter::add_row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw ConfigError("internal: CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    body_ += format_number(values[i]);
    body_ += (i + 1 < values.size()) ? ',' : '\n';
  }
  ++data_rows_;
}

void CsvWriter::write(const std::string& path) const {
  if (path.empty() || path == "-") {
    std::cout << header_ << body_;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << header_ << body_;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace minsir::cli
