#include "tpe/csv.hpp"

#include <cstdio>

namespace tpe {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()), path_(path) {
    if (!out_) throw ConfigError("cannot open output file " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_) {
        throw ConfigError("csv row width mismatch in " + path_);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "\n");
    }
}

}  // namespace tpe
