#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "esmhd/types.hpp"

namespace esmhd {

// CSV writer emitting full-precision scientific notation (17 significant
// digits) so numerical audits are reproducible from the logs.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ConfigError("cannot open output file: " + path);
    for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << "\n";
    columns_ = header.size();
  }

  void row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ShapeMismatch("csv row width");
    for (size_t i = 0; i < values.size(); ++i)
      out_ << (i ? "," : "") << format(values[i]);
    out_ << "\n";
  }

  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

 private:
  std::ofstream out_;
  size_t columns_ = 0;
};

}  // namespace esmhd
