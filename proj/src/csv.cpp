#include "fextrem/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace fextrem {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& message) {
  throw DataError(source + ":" + std::to_string(line) + ": " + message);
}

double parse_value(const std::string& field, const std::string& source,
                   std::size_t line, std::size_t column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(source, line,
         "field " + std::to_string(column) + ": cannot parse '" + field +
             "' as a number");
  if (!std::isfinite(value))
    fail(source, line,
         "field " + std::to_string(column) + ": non-finite value '" + field +
             "'");
  return value;
}

}  // namespace

CurveTable read_curve_table(std::istream& in, const std::string& source) {
  CurveTable table;
  table.source = source;

  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);

    if (!saw_header) {
      if (fields[0] != "id")
        fail(source, line_no, "header must start with 'id'");
      if (fields.size() < 2)
        fail(source, line_no, "header has no grid points");
      for (std::size_t j = 1; j < fields.size(); ++j) {
        const double t = parse_value(fields[j], source, line_no, j + 1);
        if (!table.grid_points.empty() && !(table.grid_points.back() < t))
          fail(source, line_no,
               "grid points not strictly increasing at column " +
                   std::to_string(j));
        table.grid_points.push_back(t);
      }
      width = fields.size();
      saw_header = true;
      continue;
    }

    if (fields.size() != width)
      fail(source, line_no,
           "expected " + std::to_string(width) + " fields, got " +
               std::to_string(fields.size()));
    if (fields[0].empty()) fail(source, line_no, "empty curve id");
    std::vector<double> values;
    values.reserve(width - 1);
    for (std::size_t j = 1; j < width; ++j)
      values.push_back(parse_value(fields[j], source, line_no, j + 1));
    table.rows.emplace_back(fields[0], std::move(values));
    table.row_lines.push_back(line_no);
  }

  if (!saw_header) fail(source, 1, "missing header");
  if (table.rows.empty()) fail(source, line_no == 0 ? 1 : line_no, "no curves");
  return table;
}

CurveSet parse_curves(std::istream& in, const std::string& source) {
  CurveTable table = read_curve_table(in, source);

  std::unordered_map<std::string, std::size_t> first_line;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::size_t line = table.row_lines[i];
    const auto [it, inserted] = first_line.emplace(table.rows[i].first, line);
    if (!inserted)
      fail(source, line,
           "duplicate curve id '" + table.rows[i].first + "' (first seen on line " +
               std::to_string(it->second) + ")");
  }

  Grid grid = Grid::from_points(table.grid_points);
  std::vector<Curve> curves;
  curves.reserve(table.rows.size());
  for (auto& [id, values] : table.rows)
    curves.emplace_back(id, std::move(values));
  return CurveSet(std::move(grid), std::move(curves));
}

CurveSet parse_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  return parse_curves(in, path);
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_curves(std::ostream& out, const CurveSet& set) {
  out << "id";
  for (double t : set.grid().points()) out << ',' << format_double(t);
  out << '\n';
  for (const Curve& c : set.curves()) {
    out << c.id;
    for (double v : c.values) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace fextrem
