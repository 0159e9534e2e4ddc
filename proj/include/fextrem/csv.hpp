#ifndef FEXTREM_CSV_HPP
#define FEXTREM_CSV_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fextrem/curves.hpp"

namespace fextrem {

/// Raw parse of the wide curve format before Grid/CurveSet construction:
/// header `id,t1,...,td`, one row per curve. Kept separate so errors can
/// carry source/line positions.
struct CurveTable {
  std::string source;
  std::vector<double> grid_points;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  std::vector<std::size_t> row_lines;  // source line of each row
};

CurveTable read_curve_table(std::istream& in, const std::string& source);

/// Parses a wide CSV file into a CurveSet on a trapezoidal-weight grid.
/// All format errors are DataError with "source:line:" positions.
CurveSet parse_curves(const std::string& path);
CurveSet parse_curves(std::istream& in, const std::string& source);

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double value);

/// Inverse of parse_curves: header from grid points, one row per curve.
void write_curves(std::ostream& out, const CurveSet& set);

}  // namespace fextrem

#endif
