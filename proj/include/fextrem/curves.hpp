#ifndef FEXTREM_CURVES_HPP
#define FEXTREM_CURVES_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fextrem {

/// Error for malformed or inconsistent data (bad files, non-conformant
/// curves, infeasible parameters). The CLI maps it to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Common discretization of the domain interval: ordered evaluation points
/// t_1 < ... < t_d plus one nonnegative integration weight per point.
///
/// Two constructions are provided. `from_points` assigns trapezoidal cell
/// lengths (w_1 = (t_2-t_1)/2, w_k = (t_{k+1}-t_{k-1})/2, w_d = (t_d-t_{d-1})/2),
/// the quadrature discretization of arc measure on [t_1, t_d]. `indexes`
/// builds the plain vector-data case: points 1..d with equal weights, so
/// weighted proportions reduce to coordinate counting.
///
/// Invariant either way: weights are strictly positive and sum to t_d - t_1
/// (a single point gets weight 1).
class Grid {
public:
  Grid(std::vector<double> points, std::vector<double> weights);

  static Grid from_points(std::vector<double> points);
  static Grid indexes(std::size_t d);

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// t_d - t_1 (0 for a single point).
  double span() const { return points_.back() - points_.front(); }

  /// Sum of all weights, accumulated once in point order at construction.
  double total_weight() const { return total_weight_; }

  /// True when every weight is the same value; weighted proportions then
  /// reduce to exact coordinate counting.
  bool uniform_weights() const { return uniform_weights_; }

  bool operator==(const Grid& other) const {
    return points_ == other.points_ && weights_ == other.weights_;
  }

private:
  std::vector<double> points_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
  bool uniform_weights_ = true;
};

/// One sampled curve: an id plus d finite values aligned to some Grid.
struct Curve {
  std::string id;
  std::vector<double> values;

  Curve(std::string id, std::vector<double> values);

  bool operator==(const Curve& other) const {
    return id == other.id && values == other.values;
  }
};

/// Throws DataError naming the curve when its length does not match the grid.
void require_conformant(const Curve& curve, const Grid& grid);

/// A sample of n >= 1 curves on one shared grid, with unique ids.
class CurveSet {
public:
  CurveSet(Grid grid, std::vector<Curve> curves);

  const Grid& grid() const { return grid_; }
  const std::vector<Curve>& curves() const { return curves_; }
  std::size_t size() const { return curves_.size(); }

  bool operator==(const CurveSet& other) const {
    return grid_ == other.grid_ && curves_ == other.curves_;
  }

private:
  Grid grid_;
  std::vector<Curve> curves_;
};

enum class ExtremalityKind { Hyper, Hypo, GenHyper, GenHypo };

std::string_view kind_name(ExtremalityKind kind);
std::optional<ExtremalityKind> kind_from_name(std::string_view name);

constexpr bool is_hyper_side(ExtremalityKind kind) {
  return kind == ExtremalityKind::Hyper || kind == ExtremalityKind::GenHyper;
}

}  // namespace fextrem

#endif
