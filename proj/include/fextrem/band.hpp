#ifndef FEXTREM_BAND_HPP
#define FEXTREM_BAND_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fextrem/curves.hpp"

namespace fextrem {

/// Result of trimming the most extreme curves from each side: id partition
/// plus the pointwise envelope of what remains.
struct CentralRegion {
  std::vector<std::string> kept;          // set order
  std::vector<std::string> trimmed_high;  // most hyper-extreme first
  std::vector<std::string> trimmed_low;   // most hypo-extreme first
  Curve envelope_min;
  Curve envelope_max;
};

/// Trims the ceil(alpha_hyper*n) most hyper-extreme curves (ties broken by
/// the hypo-side score, then id) and the ceil(alpha_hypo*n) most
/// hypo-extreme; a curve selected on both sides is removed once and counted
/// toward the hyper group. hyper_kind must be Hyper or GenHyper, hypo_kind
/// Hypo or GenHypo; alpha_hyper + alpha_hypo must be < 1.
CentralRegion central_region(const CurveSet& set, ExtremalityKind hyper_kind,
                             ExtremalityKind hypo_kind, double alpha_hyper,
                             double alpha_hypo);

/// Pointwise min and max of the whole set, as a pair of curves with ids
/// "min" and "max".
std::pair<Curve, Curve> envelope(const CurveSet& set);

/// Scores a curve strictly below the pointwise minimum (by `offset`) and one
/// strictly above the pointwise maximum. Both scores must be exactly 1.
std::pair<double, double> far_curve_probe(const CurveSet& set, double offset);

enum class Process { UniformConstant, BrownianWalk };

const char* process_name(Process process);
Process process_from_name(const std::string& name);

/// Per-(sample size, query) mean absolute deviation of the empirical
/// hyperextremality from its population value, averaged over replications.
struct SimulationSummary {
  std::string process;
  std::size_t grid_size = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> levels;             // query labels, process-specific
  std::vector<std::size_t> n_values;
  std::vector<double> mean_abs_error;     // per n, averaged over levels
  std::vector<std::vector<double>> level_errors;  // [n index][level index]
};

/// Monte Carlo check that empirical extremality converges to the population
/// value. For uniform-constant (curves constant at Z ~ U(0,1)) the
/// population hyperextremality of the constant-c query is 1-c, probed at
/// c = 0.1..0.9. For the random-walk process the population value is
/// estimated once from a large fixed reference sample. Replications run on
/// seed-derived substreams, so results do not depend on the worker count.
SimulationSummary simulate_consistency(Process process,
                                       const std::vector<std::size_t>& n_list,
                                       std::size_t grid_size, std::size_t reps,
                                       std::uint64_t seed);

/// Per-replication error (mean over query levels) for each n in n_list,
/// paired within a replication. Row r column i belongs to replication r at
/// n_list[i]. simulate_consistency aggregates this table.
std::vector<std::vector<double>> consistency_errors(
    Process process, const std::vector<std::size_t>& n_list,
    std::size_t grid_size, std::size_t reps, std::uint64_t seed);

}  // namespace fextrem

#endif
