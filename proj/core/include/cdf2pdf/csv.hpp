#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cdf2pdf {

// Shortest decimal form that reads back to the identical double (17
// significant digits at most).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads a numeric CSV with a mandatory header line. When expect_header is
// nonempty the header must match it exactly. Parse failures carry the 1-based
// file line number.
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expect_header = {});

// Column-oriented writer; all columns must share one length.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

}  // namespace cdf2pdf
