#ifndef STORMCLUST_CSV_HPP
#define STORMCLUST_CSV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stormclust::csv {

/// A parsed CSV file: header plus rows of raw cells. Line numbers are 1-based
/// file lines (the header is line 1).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  /// Position of a header column, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Reads a comma-separated file without quoting. Blank lines are skipped and
/// a trailing CR is stripped. Throws IoError if the file cannot be opened and
/// SchemaError on an empty file or a row whose width differs from the header.
Table read_file(const std::string& path);

/// Splits one line on commas; surrounding whitespace is trimmed from each cell.
std::vector<std::string> split_line(std::string_view line);

/// Strict decimal parse (whole cell must be consumed). Returns nullopt on
/// failure; accepts inf/nan spellings, so callers check finiteness.
std::optional<double> parse_double(std::string_view cell);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

/// Writes `content` to `path`, throwing IoError (naming the path) on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace stormclust::csv

#endif
