#include "fextrem/extremality.hpp"

#include "fextrem/compare.hpp"
#include "fextrem/threading.hpp"

namespace fextrem {

namespace {

// Scores are assembled from exact integer counts or from order-preserving
// sums so that the dominance bound (generalized <= indicator) and the
// antitone laws hold bitwise, not just up to rounding:
//   indicator: (n - count) / n
//   generalized: (n - sum of fractions, summed in set order) / n

double indicator_score(const CurveSet& set, const Curve& query, bool hyper) {
  const Grid& grid = set.grid();
  const std::size_t n = set.size();
  std::size_t count = 0;
  for (const Curve& member : set.curves()) {
    const bool held = hyper ? pointwise_below(member, query, grid)
                            : pointwise_below(query, member, grid);
    if (held) ++count;
  }
  return static_cast<double>(n - count) / static_cast<double>(n);
}

double generalized_score(const CurveSet& set, const Curve& query, bool hyper) {
  const Grid& grid = set.grid();
  const std::size_t n = set.size();
  double sum = 0.0;
  for (const Curve& member : set.curves()) {
    sum += hyper ? fraction_below(member, query, grid)
                 : fraction_below(query, member, grid);
  }
  return (static_cast<double>(n) - sum) / static_cast<double>(n);
}

}  // namespace

double hyperextremality(const CurveSet& set, const Curve& query) {
  return indicator_score(set, query, true);
}

double hypoextremality(const CurveSet& set, const Curve& query) {
  return indicator_score(set, query, false);
}

double gen_hyperextremality(const CurveSet& set, const Curve& query) {
  return generalized_score(set, query, true);
}

double gen_hypoextremality(const CurveSet& set, const Curve& query) {
  return generalized_score(set, query, false);
}

double extremality(const CurveSet& set, const Curve& query,
                   ExtremalityKind kind) {
  switch (kind) {
    case ExtremalityKind::Hyper: return hyperextremality(set, query);
    case ExtremalityKind::Hypo: return hypoextremality(set, query);
    case ExtremalityKind::GenHyper: return gen_hyperextremality(set, query);
    case ExtremalityKind::GenHypo: return gen_hypoextremality(set, query);
  }
  throw DataError("extremality: unknown kind");
}

ExtremalityReport batch_extremality(const CurveSet& set,
                                    ExtremalityKind kind) {
  const std::size_t n = set.size();
  std::vector<double> scores(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
      scores[j] = extremality(set, set.curves()[j], kind);
  });
  ExtremalityReport report;
  report.kind = kind;
  report.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    report.values.emplace_back(set.curves()[j].id, scores[j]);
  return report;
}

ExtremalityReport batch_extremality_naive(const CurveSet& set,
                                          ExtremalityKind kind) {
  // Deliberately plain double loop over raw value arrays, sharing no code
  // with the batched path. Comparisons and additions run in the same order
  // (members in set order, grid points ascending), so results must match
  // bitwise.
  const Grid& grid = set.grid();
  const std::vector<double>& w = grid.weights();
  const double total = grid.total_weight();
  const std::size_t n = set.size();
  const std::size_t d = grid.size();
  const bool hyper = is_hyper_side(kind);
  const bool indicator =
      kind == ExtremalityKind::Hyper || kind == ExtremalityKind::Hypo;

  ExtremalityReport report;
  report.kind = kind;
  report.values.reserve(n);
  for (const Curve& query : set.curves()) {
    double score;
    if (indicator) {
      std::size_t count = 0;
      for (const Curve& member : set.curves()) {
        bool held = true;
        for (std::size_t k = 0; k < d; ++k) {
          const double lo = hyper ? member.values[k] : query.values[k];
          const double hi = hyper ? query.values[k] : member.values[k];
          if (!(lo <= hi)) {
            held = false;
            break;
          }
        }
        if (held) ++count;
      }
      score = static_cast<double>(n - count) / static_cast<double>(n);
    } else {
      const bool uniform = grid.uniform_weights();
      double sum = 0.0;
      for (const Curve& member : set.curves()) {
        std::size_t count = 0;
        double held = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double lo = hyper ? member.values[k] : query.values[k];
          const double hi = hyper ? query.values[k] : member.values[k];
          if (lo <= hi) {
            ++count;
            held += w[k];
          }
        }
        if (uniform)
          sum += static_cast<double>(count) / static_cast<double>(d);
        else if (count == d)
          sum += 1.0;
        else
          sum += held / total;
      }
      score = (static_cast<double>(n) - sum) / static_cast<double>(n);
    }
    report.values.emplace_back(query.id, score);
  }
  return report;
}

}  // namespace fextrem
