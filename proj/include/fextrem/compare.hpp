#ifndef FEXTREM_COMPARE_HPP
#define FEXTREM_COMPARE_HPP

#include "fextrem/curves.hpp"

namespace fextrem {

/// True iff a(t_k) <= b(t_k) at every grid point. Early exit on the first
/// point where the inequality fails.
bool pointwise_below(const Curve& a, const Curve& b, const Grid& grid);

/// Weighted proportion of the grid where a(t_k) <= b(t_k):
/// sum of weights over {k : a_k <= b_k} divided by the total weight.
double fraction_below(const Curve& a, const Curve& b, const Grid& grid);

}  // namespace fextrem

#endif
