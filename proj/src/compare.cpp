#include "fextrem/compare.hpp"

namespace fextrem {

bool pointwise_below(const Curve& a, const Curve& b, const Grid& grid) {
  require_conformant(a, grid);
  require_conformant(b, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(a.values[k] <= b.values[k])) return false;
  }
  return true;
}

double fraction_below(const Curve& a, const Curve& b, const Grid& grid) {
  require_conformant(a, grid);
  require_conformant(b, grid);
  const std::vector<double>& w = grid.weights();
  const std::size_t d = grid.size();
  std::size_t count = 0;
  double held = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (a.values[k] <= b.values[k]) {
      ++count;
      held += w[k];
    }
  }
  // Equal weights cancel, so the proportion is an exact count ratio; this
  // also makes "all points satisfied" exactly 1 on any grid.
  if (grid.uniform_weights())
    return static_cast<double>(count) / static_cast<double>(d);
  if (count == d) return 1.0;
  return held / grid.total_weight();
}

}  // namespace fextrem
