#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "tpe/errors.hpp"

namespace tpe {

// Deterministic CSV output: full double precision (17 significant digits),
// no timestamps, LF line endings. Identical inputs give identical bytes.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);

  private:
    std::ofstream out_;
    std::size_t n_columns_;
    std::string path_;
};

std::string format_double(double v);

}  // namespace tpe
