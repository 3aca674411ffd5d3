#include "tipwatch/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tipwatch/error.hpp"

namespace tipwatch::csv {
namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

}  // namespace

TimeSeries load_csv(std::istream& in, const ColumnRef& column, const LoadOptions& options,
                    const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::IoError, source_name + ": empty file, header row required");
  }
  const auto header = split_row(line);
  const bool has_time = !header.empty() && header.front() == "t";

  std::size_t col = 0;
  if (const auto* name = std::get_if<std::string>(&column)) {
    auto it = std::find(header.begin(), header.end(), *name);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn, source_name + ": no column named '" + *name + "'");
    }
    col = static_cast<std::size_t>(it - header.begin());
  } else {
    col = std::get<std::size_t>(column);
    if (col >= header.size()) {
      throw Error(ErrorKind::MissingColumn,
                  source_name + ": column index " + std::to_string(col) + " out of range");
    }
  }

  std::vector<double> times;
  std::vector<double> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_row(line);
    if (col >= cells.size()) {
      throw Error(ErrorKind::MissingColumn,
                  source_name + ": row " + std::to_string(row) + " has no value for column");
    }
    double v = 0.0;
    if (!parse_number(cells[col], v)) {
      throw Error(ErrorKind::NonNumericEntry, source_name + ": row " + std::to_string(row) +
                                                  " value '" + cells[col] + "' is not a number");
    }
    values.push_back(v);
    if (has_time) {
      double t = 0.0;
      if (!parse_number(cells[0], t)) {
        throw Error(ErrorKind::NonNumericEntry, source_name + ": row " + std::to_string(row) +
                                                    " time '" + cells[0] + "' is not a number");
      }
      times.push_back(t);
    }
  }
  if (values.empty()) throw Error(ErrorKind::TooShort, source_name + ": no data rows");

  double t0 = options.t0;
  double dt = options.dt;
  if (has_time && times.size() >= 2) {
    t0 = times.front();
    dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double step = times[i] - times[i - 1];
      if (std::abs(step - dt) > options.spacing_rtol * std::abs(dt)) {
        throw Error(ErrorKind::NonUniformSampling,
                    source_name + ": row " + std::to_string(i + 2) + " breaks uniform spacing");
      }
    }
    // Keep the printed step when it reproduces the column; avoids drift like 0.19999999999999998.
    const double printed = times[1] - times[0];
    if (std::abs(printed - dt) <= 1e-12 * std::abs(dt)) dt = printed;
  } else if (has_time) {
    t0 = times.front();
  }
  return TimeSeries(t0, dt, std::move(values), options.unit_label);
}

TimeSeries load_csv(const std::filesystem::path& path, const ColumnRef& column,
                    const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return load_csv(in, column, options, path.string());
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void Table::write(std::ostream& out) const {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

void Table::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write(out);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  const std::string& name) {
  Table table;
  table.header = {"t", name};
  table.rows.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    table.rows.push_back({format_double(series.time_at(i)), format_double(series[i])});
  }
  table.write(path);
}

}  // namespace tipwatch::csv
