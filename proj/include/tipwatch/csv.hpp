#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "tipwatch/series.hpp"

namespace tipwatch::csv {

/// Column selector: header name or zero-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct LoadOptions {
  /// Used when the file has no leading "t" column.
  double dt = 1.0;
  double t0 = 0.0;
  std::string unit_label;
  /// Relative spacing tolerance for the time column.
  double spacing_rtol = 1e-6;
};

/**
 * Load one numeric column from a comma-separated file with a header row.
 *
 * If the first header cell is "t" it is treated as the time column: it must be
 * uniformly spaced, and t0/dt are taken from it.
 */
TimeSeries load_csv(const std::filesystem::path& path, const ColumnRef& column,
                    const LoadOptions& options = {});
TimeSeries load_csv(std::istream& in, const ColumnRef& column, const LoadOptions& options = {},
                    const std::string& source_name = "<stream>");

/// Shortest decimal form that round-trips (at most 17 significant digits).
std::string format_double(double value);

/// Column-oriented table writer. All columns must be the same length.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
};

/// Write a series as a two-column CSV "t,<name>".
void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  const std::string& name = "x");

}  // namespace tipwatch::csv
