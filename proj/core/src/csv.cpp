#include "cdf2pdf/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf {

std::string format_double(double v) {
  char buf[40];
  // round-trip: try increasing precision until the value reads back exactly
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expect_header) {
  std::ifstream in(path);
  if (!in) throw DependencyError("cannot open CSV: " + path.string());

  CsvTable table;
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError("CSV is empty (missing header): " + path.string(), 1);
  }
  ++line_no;
  table.header = split_line(line);
  if (!expect_header.empty() && table.header != expect_header) {
    std::ostringstream want;
    for (std::size_t i = 0; i < expect_header.size(); ++i) {
      if (i) want << ',';
      want << expect_header[i];
    }
    throw ParseError("CSV header mismatch in " + path.string() +
                         ", expected: " + want.str(),
                     1);
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw ParseError("CSV row has " + std::to_string(cells.size()) +
                           " fields, header has " +
                           std::to_string(table.header.size()) + ": " +
                           path.string(),
                       line_no);
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const char* s = cells[c].c_str();
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || *end != '\0') {
        throw ParseError("CSV field '" + cells[c] + "' in column " +
                             table.header[c] + " is not numeric: " +
                             path.string(),
                         line_no);
      }
      row[c] = v;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) {
    throw ShapeError("write_csv: header/column count mismatch");
  }
  const std::size_t n = columns.empty() ? 0 : columns[0].size();
  for (const auto& col : columns) {
    if (col.size() != n) throw ShapeError("write_csv: ragged columns");
  }
  std::ofstream out(path);
  if (!out) throw DependencyError("cannot open CSV for writing: " + path.string());
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out << ',';
    out << header[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ',';
      out << format_double(columns[c][r]);
    }
    out << '\n';
  }
  if (!out) throw DependencyError("failed writing CSV: " + path.string());
}

}  // namespace cdf2pdf
