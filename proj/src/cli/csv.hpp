#pragma once

#include <string>
#include <vector>

namespace minsir::cli {

struct RunConfig;

// Accumulates a provenance-commented CSV document. All numbers render with
// "%.12g" in the C locale, so identical inputs give byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& command, const RunConfig& cfg,
            const std::vector<std::string>& columns);

  void add_row(const std::vector<double>& values);
  void add_comment(const std::string& text);  // extra '#' line before data

  // Writes the document to path ("" or "-" selects stdout).
  void write(const std::string& path) const;

  std::size_t rows() const { return data_rows_; }

  static std::string format_number(double v);

 private:
  std::string header_;
  std::string body_;
  std::size_t columns_ = 0;
  std::size_t data_rows_ = 0;
};

}  // namespace minsir::cli
