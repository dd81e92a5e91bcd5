#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace dbarlab {

// Fixed-format CSV writer. %.17g round-trips doubles, so identical inputs
// give byte-identical files.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os_ << ',';
      os_ << header[i];
    }
    os_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    std::size_t i = 0;
    for (double v : values) {
      if (i++) os_ << ',';
      os_ << num(v);
    }
    os_ << '\n';
  }

  void raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  std::ostream& os_;
};

}  // namespace dbarlab
