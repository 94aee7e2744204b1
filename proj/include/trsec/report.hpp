#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trsec {

/// Shortest round-trip decimal for a double ("%.17g"); NaN prints "nan".
std::string format_double(double v);
std::string format_u64(std::uint64_t v);
std::string format_int(int v);

/// A fully formatted table: header plus rows of preformatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Writes UTF-8, LF line endings, comma separators, header first. The
/// output is byte-identical for identical inputs; all numeric formatting
/// happens through the format_* helpers above.
void write_csv(const std::string& path, const CsvTable& table);

}  // namespace trsec
