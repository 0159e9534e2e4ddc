#ifndef FEXTREM_EXTREMALITY_HPP
#define FEXTREM_EXTREMALITY_HPP

#include <string>
#include <utility>
#include <vector>

#include "fextrem/curves.hpp"

namespace fextrem {

/// Scores of every member of a set against the whole set (self included),
/// in set order.
struct ExtremalityReport {
  ExtremalityKind kind;
  std::vector<std::pair<std::string, double>> values;
};

/// 1 - (proportion of set curves lying entirely at or below the query).
/// High when almost nothing fits under the query's graph.
double hyperextremality(const CurveSet& set, const Curve& query);

/// 1 - (proportion of set curves lying entirely at or above the query).
double hypoextremality(const CurveSet& set, const Curve& query);

/// Indicator "entirely below" relaxed to the weighted fraction of the grid
/// where the relation holds: 1 - mean_i fraction_below(x_i, query).
double gen_hyperextremality(const CurveSet& set, const Curve& query);

/// Mirror image: 1 - mean_i fraction_below(query, x_i).
double gen_hypoextremality(const CurveSet& set, const Curve& query);

double extremality(const CurveSet& set, const Curve& query,
                   ExtremalityKind kind);

/// Scores all members, partitioning queries across parallel workers. Each
/// query is an early-exit scan over the set; results are bitwise equal to
/// batch_extremality_naive for any worker count.
ExtremalityReport batch_extremality(const CurveSet& set, ExtremalityKind kind);

/// Serial per-query loop over the public single-query operations. Kept as
/// the oracle the batched implementation is checked against.
ExtremalityReport batch_extremality_naive(const CurveSet& set,
                                          ExtremalityKind kind);

}  // namespace fextrem

#endif
