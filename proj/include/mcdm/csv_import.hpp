#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mcdm/errors.hpp"
#include "mcdm/types.hpp"

namespace mcdm::io {

// Parses a real that may use a decimal comma ("0,333333"). Whitespace around
// the token is ignored.
inline double parse_real(std::string_view token) {
  std::string s(token);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    throw ParseError("empty numeric field");
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  for (auto& ch : s) {
    if (ch == ',') ch = '.';
  }
  double value = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

namespace detail {

// Splits one CSV line on the given separator, honoring double quotes.
inline std::vector<std::string> split_csv_line(std::string_view line,
                                               char sep) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == sep) {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV line");
  fields.push_back(current);
  return fields;
}

inline std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

// Pairwise matrix CSV: the first row and first column carry criterion ids,
// the body carries judgment ratios. Semicolon-separated files (where cells
// use decimal commas) are detected from the header line.
inline PairwiseMatrix pairwise_from_csv_text(
    const std::string& text,
    const PairwiseMatrix::Options& options = PairwiseMatrix::Options{}) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!detail::trimmed(line).empty()) lines.push_back(line);
    }
  }
  if (lines.size() < 2) {
    throw ParseError("matrix CSV needs a header line and at least one row");
  }
  const char sep = lines.front().find(';') != std::string::npos ? ';' : ',';

  auto header = detail::split_csv_line(lines.front(), sep);
  if (header.size() < 3) {
    throw ParseError("matrix CSV header must list at least two criteria");
  }
  std::vector<std::string> ids;
  for (std::size_t j = 1; j < header.size(); ++j) {
    ids.push_back(detail::trimmed(header[j]));
  }

  const std::size_t n = ids.size();
  if (lines.size() - 1 != n) {
    throw ParseError("matrix CSV has " + std::to_string(lines.size() - 1) +
                     " data rows for " + std::to_string(n) + " criteria");
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    auto fields = detail::split_csv_line(lines[i + 1], sep);
    if (fields.size() != n + 1) {
      throw ParseError("row " + std::to_string(i + 1) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(n + 1));
    }
    if (detail::trimmed(fields[0]) != ids[i]) {
      throw ParseError("row label '" + detail::trimmed(fields[0]) +
                       "' does not match header order (expected '" + ids[i] +
                       "')");
    }
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = parse_real(fields[j + 1]);
    }
  }
  return PairwiseMatrix::validated(rows, ids, options);
}

inline PairwiseMatrix pairwise_from_csv_file(
    const std::string& path,
    const PairwiseMatrix::Options& options = PairwiseMatrix::Options{}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open CSV file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return pairwise_from_csv_text(buffer.str(), options);
}

}  // namespace mcdm::io
