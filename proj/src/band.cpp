#include "fextrem/band.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fextrem/extremality.hpp"
#include "fextrem/rng.hpp"
#include "fextrem/threading.hpp"

namespace fextrem {

namespace {

// ceil with a guard so that alpha*n landing a hair above an integer due to
// binary representation (e.g. 0.1*10) does not trim an extra curve.
std::size_t trim_count(double alpha, std::size_t n) {
  const double raw = std::ceil(alpha * static_cast<double>(n) - 1e-9);
  if (raw <= 0.0) return 0;
  const auto k = static_cast<std::size_t>(raw);
  return std::min(k, n);
}

std::vector<std::size_t> order_by_extremity(const CurveSet& set,
                                            const std::vector<double>& primary,
                                            const std::vector<double>& other) {
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (primary[a] != primary[b]) return primary[a] > primary[b];
    if (other[a] != other[b]) return other[a] > other[b];
    return set.curves()[a].id < set.curves()[b].id;
  });
  return order;
}

}  // namespace

std::pair<Curve, Curve> envelope(const CurveSet& set) {
  const std::size_t d = set.grid().size();
  std::vector<double> lo = set.curves().front().values;
  std::vector<double> hi = lo;
  for (const Curve& c : set.curves()) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c.values[k]);
      hi[k] = std::max(hi[k], c.values[k]);
    }
  }
  return {Curve("min", std::move(lo)), Curve("max", std::move(hi))};
}

CentralRegion central_region(const CurveSet& set, ExtremalityKind hyper_kind,
                             ExtremalityKind hypo_kind, double alpha_hyper,
                             double alpha_hypo) {
  if (!is_hyper_side(hyper_kind))
    throw DataError("central region: hyper-side kind must be hyper or gen-hyper");
  if (is_hyper_side(hypo_kind))
    throw DataError("central region: hypo-side kind must be hypo or gen-hypo");
  if (!(alpha_hyper >= 0.0) || !(alpha_hypo >= 0.0) ||
      !(alpha_hyper + alpha_hypo < 1.0))
    throw DataError("central region: trim fractions must be nonnegative and sum below 1");

  const std::size_t n = set.size();
  std::vector<double> hyper_scores(n);
  std::vector<double> hypo_scores(n);
  {
    const ExtremalityReport hr = batch_extremality(set, hyper_kind);
    const ExtremalityReport lr = batch_extremality(set, hypo_kind);
    for (std::size_t i = 0; i < n; ++i) {
      hyper_scores[i] = hr.values[i].second;
      hypo_scores[i] = lr.values[i].second;
    }
  }

  const std::size_t k_high = trim_count(alpha_hyper, n);
  const std::size_t k_low = trim_count(alpha_hypo, n);

  const std::vector<std::size_t> by_hyper =
      order_by_extremity(set, hyper_scores, hypo_scores);
  const std::vector<std::size_t> by_hypo =
      order_by_extremity(set, hypo_scores, hyper_scores);

  std::unordered_set<std::size_t> removed;
  CentralRegion region{{}, {}, {}, Curve("min", {0.0}), Curve("max", {0.0})};
  for (std::size_t i = 0; i < k_high; ++i) {
    region.trimmed_high.push_back(set.curves()[by_hyper[i]].id);
    removed.insert(by_hyper[i]);
  }
  // A curve that is also among the most hypo-extreme was already removed
  // above and stays counted in the hyper group.
  for (std::size_t i = 0; i < k_low; ++i) {
    if (removed.insert(by_hypo[i]).second)
      region.trimmed_low.push_back(set.curves()[by_hypo[i]].id);
  }

  std::vector<Curve> kept_curves;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed.count(i)) {
      region.kept.push_back(set.curves()[i].id);
      kept_curves.push_back(set.curves()[i]);
    }
  }
  if (kept_curves.empty())
    throw DataError("central region: trimming removed every curve");

  CurveSet kept_set(set.grid(), std::move(kept_curves));
  auto [lo, hi] = envelope(kept_set);
  region.envelope_min = std::move(lo);
  region.envelope_max = std::move(hi);
  return region;
}

std::pair<double, double> far_curve_probe(const CurveSet& set, double offset) {
  if (!(offset > 0.0)) throw DataError("far probe: offset must be positive");
  auto [lo, hi] = envelope(set);
  std::vector<double> below(lo.values.size());
  std::vector<double> above(hi.values.size());
  for (std::size_t k = 0; k < below.size(); ++k) {
    below[k] = lo.values[k] - offset;
    above[k] = hi.values[k] + offset;
  }
  return {hyperextremality(set, Curve("below", std::move(below))),
          hypoextremality(set, Curve("above", std::move(above)))};
}

const char* process_name(Process process) {
  switch (process) {
    case Process::UniformConstant: return "uniform-constant";
    case Process::BrownianWalk: return "brownian-like-random-walk";
  }
  return "unknown";
}

Process process_from_name(const std::string& name) {
  if (name == "uniform-constant") return Process::UniformConstant;
  if (name == "brownian-like-random-walk") return Process::BrownianWalk;
  throw DataError("unknown process '" + name + "'");
}

namespace {

// Substream indices: replications use rep*|n_list|+i; fixed assets (query
// curves, the reference sample for the walk process) use a high offset that
// replication indices cannot reach.
constexpr std::uint64_t kAssetStream = 1ull << 48;
constexpr std::size_t kWalkQueryCount = 5;
constexpr std::size_t kWalkReferenceSize = 50000;

std::vector<double> walk_values(std::mt19937_64& engine, std::size_t d) {
  std::normal_distribution<double> step(0.0, 1.0 / std::sqrt(double(d)));
  std::vector<double> values(d);
  double level = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    level += step(engine);
    values[k] = level;
  }
  return values;
}

CurveSet sample_set(Process process, std::size_t n, const Grid& grid,
                    std::mt19937_64& engine) {
  std::vector<Curve> curves;
  curves.reserve(n);
  if (process == Process::UniformConstant) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double z = unif(engine);
      curves.emplace_back("z" + std::to_string(i + 1),
                          std::vector<double>(grid.size(), z));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      curves.emplace_back("z" + std::to_string(i + 1),
                          walk_values(engine, grid.size()));
  }
  return CurveSet(grid, std::move(curves));
}

struct QueryPlan {
  std::vector<double> levels;
  std::vector<Curve> queries;
  std::vector<double> population;
};

QueryPlan make_query_plan(Process process, const Grid& grid,
                          std::uint64_t seed) {
  QueryPlan plan;
  if (process == Process::UniformConstant) {
    for (int k = 1; k <= 9; ++k) {
      const double c = k / 10.0;
      plan.levels.push_back(c);
      plan.queries.emplace_back("q" + std::to_string(k),
                                std::vector<double>(grid.size(), c));
      plan.population.push_back(1.0 - c);
    }
    return plan;
  }
  // No closed form for the walk process: hold the queries fixed and estimate
  // their population extremality once from a reference sample large enough
  // that its own error is small against the n's being probed.
  std::mt19937_64 query_engine = stream_engine(seed, kAssetStream);
  for (std::size_t q = 0; q < kWalkQueryCount; ++q) {
    plan.levels.push_back(static_cast<double>(q + 1));
    plan.queries.emplace_back("q" + std::to_string(q + 1),
                              walk_values(query_engine, grid.size()));
  }
  std::mt19937_64 ref_engine = stream_engine(seed, kAssetStream + 1);
  const CurveSet reference =
      sample_set(process, kWalkReferenceSize, grid, ref_engine);
  for (const Curve& query : plan.queries)
    plan.population.push_back(hyperextremality(reference, query));
  return plan;
}

struct ErrorTensor {
  QueryPlan plan;
  // err[rep][n index][level index]
  std::vector<std::vector<std::vector<double>>> err;
};

ErrorTensor error_tensor(Process process,
                         const std::vector<std::size_t>& n_list,
                         std::size_t grid_size, std::size_t reps,
                         std::uint64_t seed) {
  if (reps < 1) throw DataError("simulate: reps must be >= 1");
  if (n_list.empty()) throw DataError("simulate: empty n list");
  for (std::size_t n : n_list)
    if (n < 1) throw DataError("simulate: sample sizes must be >= 1");

  const Grid grid = Grid::indexes(grid_size);
  ErrorTensor result;
  result.plan = make_query_plan(process, grid, seed);
  const QueryPlan& plan = result.plan;

  result.err.assign(
      reps, std::vector<std::vector<double>>(
                n_list.size(), std::vector<double>(plan.levels.size(), 0.0)));
  auto& err = result.err;
  parallel_for(reps, [&](std::size_t begin, std::size_t end) {
    for (std::size_t rep = begin; rep < end; ++rep) {
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        std::mt19937_64 engine =
            stream_engine(seed, rep * n_list.size() + i);
        const CurveSet sample =
            sample_set(process, n_list[i], grid, engine);
        for (std::size_t q = 0; q < plan.queries.size(); ++q) {
          const double em = hyperextremality(sample, plan.queries[q]);
          err[rep][i][q] = std::abs(em - plan.population[q]);
        }
      }
    }
  });
  return result;
}

}  // namespace

std::vector<std::vector<double>> consistency_errors(
    Process process, const std::vector<std::size_t>& n_list,
    std::size_t grid_size, std::size_t reps, std::uint64_t seed) {
  const auto [plan, err] =
      error_tensor(process, n_list, grid_size, reps, seed);
  const std::size_t levels = plan.levels.size();
  std::vector<std::vector<double>> out(reps,
                                       std::vector<double>(n_list.size()));
  for (std::size_t rep = 0; rep < reps; ++rep) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      double sum = 0.0;
      for (std::size_t q = 0; q < levels; ++q) sum += err[rep][i][q];
      out[rep][i] = sum / static_cast<double>(levels);
    }
  }
  return out;
}

SimulationSummary simulate_consistency(Process process,
                                       const std::vector<std::size_t>& n_list,
                                       std::size_t grid_size, std::size_t reps,
                                       std::uint64_t seed) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (!(n_list[i - 1] < n_list[i]))
      throw DataError("simulate: n list must be strictly increasing");

  const auto [plan, err] =
      error_tensor(process, n_list, grid_size, reps, seed);

  SimulationSummary summary;
  summary.process = process_name(process);
  summary.grid_size = grid_size;
  summary.reps = reps;
  summary.seed = seed;
  summary.levels = plan.levels;
  summary.n_values = n_list;
  summary.level_errors.assign(n_list.size(),
                              std::vector<double>(plan.levels.size(), 0.0));
  summary.mean_abs_error.assign(n_list.size(), 0.0);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    for (std::size_t q = 0; q < plan.levels.size(); ++q) {
      double sum = 0.0;
      for (std::size_t rep = 0; rep < reps; ++rep) sum += err[rep][i][q];
      summary.level_errors[i][q] = sum / static_cast<double>(reps);
      summary.mean_abs_error[i] += summary.level_errors[i][q];
    }
    summary.mean_abs_error[i] /= static_cast<double>(plan.levels.size());
  }
  return summary;
}

}  // namespace fextrem
