#include "fextrem/curves.hpp"

#include <cmath>
#include <unordered_set>

namespace fextrem {

namespace {

std::string ordinal_msg(const char* what, std::size_t index) {
  return std::string(what) + " at position " + std::to_string(index + 1);
}

}  // namespace

Grid::Grid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw DataError("grid: no points");
  if (points_.size() != weights_.size())
    throw DataError("grid: " + std::to_string(points_.size()) + " points but " +
                    std::to_string(weights_.size()) + " weights");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k]))
      throw DataError("grid: " + ordinal_msg("non-finite point", k));
    if (k > 0 && !(points_[k - 1] < points_[k]))
      throw DataError("grid: points not strictly increasing at position " +
                      std::to_string(k + 1));
    if (!std::isfinite(weights_[k]) || !(weights_[k] > 0.0))
      throw DataError("grid: " + ordinal_msg("non-positive weight", k));
  }
  for (double w : weights_) total_weight_ += w;
  for (double w : weights_) uniform_weights_ = uniform_weights_ && w == weights_[0];
}

Grid Grid::from_points(std::vector<double> points) {
  if (points.empty()) throw DataError("grid: no points");
  const std::size_t d = points.size();
  std::vector<double> weights(d);
  if (d == 1) {
    weights[0] = 1.0;
  } else {
    weights[0] = (points[1] - points[0]) / 2.0;
    for (std::size_t k = 1; k + 1 < d; ++k)
      weights[k] = (points[k + 1] - points[k - 1]) / 2.0;
    weights[d - 1] = (points[d - 1] - points[d - 2]) / 2.0;
  }
  return Grid(std::move(points), std::move(weights));
}

Grid Grid::indexes(std::size_t d) {
  if (d == 0) throw DataError("grid: no points");
  std::vector<double> points(d);
  std::vector<double> weights(d);
  const double w = d == 1 ? 1.0 : double(d - 1) / double(d);
  for (std::size_t k = 0; k < d; ++k) {
    points[k] = double(k + 1);
    weights[k] = w;
  }
  return Grid(std::move(points), std::move(weights));
}

Curve::Curve(std::string id_in, std::vector<double> values_in)
    : id(std::move(id_in)), values(std::move(values_in)) {
  if (id.empty()) throw DataError("curve: empty id");
  if (values.empty()) throw DataError("curve '" + id + "': no values");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]))
      throw DataError("curve '" + id + "': non-finite value at position " +
                      std::to_string(k + 1));
  }
}

void require_conformant(const Curve& curve, const Grid& grid) {
  if (curve.values.size() != grid.size())
    throw DataError("curve '" + curve.id + "': " +
                    std::to_string(curve.values.size()) +
                    " values but grid has " + std::to_string(grid.size()) +
                    " points");
}

CurveSet::CurveSet(Grid grid, std::vector<Curve> curves)
    : grid_(std::move(grid)), curves_(std::move(curves)) {
  if (curves_.empty()) throw DataError("curve set: no curves");
  std::unordered_set<std::string> seen;
  for (const Curve& c : curves_) {
    require_conformant(c, grid_);
    if (!seen.insert(c.id).second)
      throw DataError("curve set: duplicate id '" + c.id + "'");
  }
}

std::string_view kind_name(ExtremalityKind kind) {
  switch (kind) {
    case ExtremalityKind::Hyper: return "hyper";
    case ExtremalityKind::Hypo: return "hypo";
    case ExtremalityKind::GenHyper: return "gen-hyper";
    case ExtremalityKind::GenHypo: return "gen-hypo";
  }
  return "unknown";
}

std::optional<ExtremalityKind> kind_from_name(std::string_view name) {
  if (name == "hyper") return ExtremalityKind::Hyper;
  if (name == "hypo") return ExtremalityKind::Hypo;
  if (name == "gen-hyper") return ExtremalityKind::GenHyper;
  if (name == "gen-hypo") return ExtremalityKind::GenHypo;
  return std::nullopt;
}

}  // namespace fextrem
