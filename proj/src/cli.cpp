#include "fextrem/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "fextrem/band.hpp"
#include "fextrem/csv.hpp"
#include "fextrem/curves.hpp"
#include "fextrem/extremality.hpp"
#include "fextrem/json_writer.hpp"
#include "fextrem/rank_test.hpp"
#include "fextrem/rng.hpp"

namespace fextrem {

namespace {

ExtremalityKind parse_kind(const std::string& name) {
  const auto kind = kind_from_name(name);
  if (!kind) throw DataError("unknown kind '" + name + "'");
  return *kind;
}

void emit(const std::string& payload, const std::string& output_path,
          std::ostream& fallback) {
  if (output_path.empty()) {
    fallback << payload;
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw DataError(output_path + ": cannot open for writing");
  file << payload;
  if (!file) throw DataError(output_path + ": write failed");
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += json_string(ids[i]);
  }
  return out + "]";
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += json_number(values[i]);
  }
  return out + "]";
}

struct ExtremalityArgs {
  std::string input;
  std::string kind;
  std::string format = "json";
  std::string output;
};

void run_extremality(const ExtremalityArgs& args, std::ostream& out) {
  const CurveSet set = parse_curves(args.input);
  ExtremalityReport report = batch_extremality(set, parse_kind(args.kind));
  std::stable_sort(report.values.begin(), report.values.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });

  std::string payload;
  if (args.format == "json") {
    payload = "[\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
      payload += "{\"id\":" + json_string(report.values[i].first) +
                 ",\"score\":" + json_number(report.values[i].second) + "}";
      payload += (i + 1 < report.values.size()) ? ",\n" : "\n";
    }
    payload += "]\n";
  } else {
    payload = "id,score\n";
    for (const auto& [id, score] : report.values)
      payload += id + "," + format_double(score) + "\n";
  }
  emit(payload, args.output, out);
}

struct BandArgs {
  std::string input;
  std::string hyper_kind = "hyper";
  std::string hypo_kind = "hypo";
  double alpha_hyper = 0.1;
  double alpha_hypo = 0.1;
  std::string format = "json";
  std::string output;
};

void run_band(const BandArgs& args, std::ostream& out) {
  const CurveSet set = parse_curves(args.input);
  const CentralRegion region =
      central_region(set, parse_kind(args.hyper_kind),
                     parse_kind(args.hypo_kind), args.alpha_hyper,
                     args.alpha_hypo);

  std::string payload;
  if (args.format == "json") {
    payload += "{\n";
    payload += "\"kept\":" + join_ids(region.kept) + ",\n";
    payload += "\"trimmed_high\":" + join_ids(region.trimmed_high) + ",\n";
    payload += "\"trimmed_low\":" + join_ids(region.trimmed_low) + ",\n";
    payload += "\"envelope\":{\"t\":" + join_numbers(set.grid().points()) +
               ",\"min\":" + join_numbers(region.envelope_min.values) +
               ",\"max\":" + join_numbers(region.envelope_max.values) + "}\n";
    payload += "}\n";
  } else {
    // Two plot-ready tables separated by a blank line: membership, then the
    // envelope sampled on the grid.
    payload = "id,group\n";
    for (const Curve& c : set.curves()) {
      const auto in_group = [&](const std::vector<std::string>& ids) {
        return std::find(ids.begin(), ids.end(), c.id) != ids.end();
      };
      const char* group = in_group(region.trimmed_high) ? "trimmed-high"
                          : in_group(region.trimmed_low) ? "trimmed-low"
                                                         : "kept";
      payload += c.id + "," + group + "\n";
    }
    payload += "\nt,min,max\n";
    for (std::size_t k = 0; k < set.grid().size(); ++k) {
      payload += format_double(set.grid().points()[k]) + "," +
                 format_double(region.envelope_min.values[k]) + "," +
                 format_double(region.envelope_max.values[k]) + "\n";
    }
  }
  emit(payload, args.output, out);
}

struct RankTestArgs {
  std::string sample_x;
  std::string sample_y;
  std::string reference;
  double split = 0.0;
  bool split_given = false;
  std::string kind;
  std::string method = "auto";
  std::string tie_policy = "paper-order";
  std::string alternative = "less";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
  std::string output;
};

/// Carves a seeded reference subsample out of X, preserving original order
/// within both parts.
std::pair<CurveSet, CurveSet> split_reference(const CurveSet& x, double split,
                                              std::uint64_t seed) {
  const std::size_t n = x.size();
  const auto n0 =
      static_cast<std::size_t>(std::llround(split * static_cast<double>(n)));
  if (n0 < 1 || n0 >= n)
    throw DataError("split: fraction " + std::to_string(split) + " leaves " +
                    std::to_string(n0) + " reference curves of " +
                    std::to_string(n) + "; need at least 1 on each side");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 engine = stream_engine(seed, 1);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(order[i], order[pick(engine)]);
  }
  std::vector<bool> to_reference(n, false);
  for (std::size_t i = 0; i < n0; ++i) to_reference[order[i]] = true;

  std::vector<Curve> ref_curves;
  std::vector<Curve> x_curves;
  for (std::size_t i = 0; i < n; ++i)
    (to_reference[i] ? ref_curves : x_curves).push_back(x.curves()[i]);
  return {CurveSet(x.grid(), std::move(ref_curves)),
          CurveSet(x.grid(), std::move(x_curves))};
}

void run_ranktest(const RankTestArgs& args, std::ostream& out,
                  std::ostream& err) {
  CurveSet x = parse_curves(args.sample_x);
  const CurveSet y = parse_curves(args.sample_y);

  std::optional<CurveSet> reference;
  if (!args.reference.empty()) {
    reference = parse_curves(args.reference);
  } else {
    auto [ref, rest] = split_reference(x, args.split, args.seed);
    reference = std::move(ref);
    x = std::move(rest);
  }

  const TestMethod method = args.method == "exact"    ? TestMethod::Exact
                            : args.method == "normal" ? TestMethod::Normal
                                                      : TestMethod::Auto;
  const TiePolicy policy = args.tie_policy == "random" ? TiePolicy::Random
                                                       : TiePolicy::PaperOrder;
  const Alternative alternative = args.alternative == "two-sided"
                                      ? Alternative::TwoSided
                                      : Alternative::Less;

  const RankTestResult result =
      rank_test(x, y, *reference, parse_kind(args.kind), method, policy,
                alternative, args.seed);
  if (result.reference_size_warning)
    err << "warning: reference size " << result.n0
        << " does not exceed the larger sample size "
        << std::max(result.n, result.m) << "\n";

  std::string payload;
  if (args.format == "json") {
    payload += "{\n";
    payload += "\"w\":" + std::to_string(result.w) + ",\n";
    payload += "\"p_value\":" + json_number(result.p_value) + ",\n";
    payload += "\"method\":\"" +
               std::string(result.method == TestMethod::Exact ? "exact"
                                                              : "normal") +
               "\",\n";
    payload += "\"alternative\":\"" +
               std::string(result.alternative == Alternative::Less
                               ? "less"
                               : "two-sided") +
               "\",\n";
    payload +=
        "\"kind\":" + json_string(std::string(kind_name(result.kind))) + ",\n";
    payload += "\"n\":" + std::to_string(result.n) + ",\n";
    payload += "\"m\":" + std::to_string(result.m) + ",\n";
    payload += "\"n0\":" + std::to_string(result.n0) + ",\n";
    payload += std::string("\"reference_warning\":") +
               (result.reference_size_warning ? "true" : "false") + ",\n";
    payload += "\"ranks\":[\n";
    const auto& entries = result.assignment.entries;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      payload += "{\"id\":" + json_string(entries[i].id) + ",\"sample\":\"" +
                 (entries[i].label == SampleLabel::X ? "x" : "y") +
                 "\",\"r\":" + json_number(entries[i].r) +
                 ",\"rank\":" + std::to_string(entries[i].rank) + "}";
      payload += (i + 1 < entries.size()) ? ",\n" : "\n";
    }
    payload += "]\n}\n";
  } else {
    payload = "id,sample,r,rank\n";
    for (const RankEntry& e : result.assignment.entries) {
      payload += e.id + "," + (e.label == SampleLabel::X ? "x" : "y") + "," +
                 format_double(e.r) + "," + std::to_string(e.rank) + "\n";
    }
  }
  emit(payload, args.output, out);
}

struct SimulateArgs {
  std::string process;
  std::vector<std::size_t> n_list = {100, 1000, 10000};
  std::size_t grid_size = 16;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

void run_simulate(const SimulateArgs& args, std::ostream& out) {
  const SimulationSummary summary =
      simulate_consistency(process_from_name(args.process), args.n_list,
                           args.grid_size, args.reps, args.seed);

  std::string payload;
  if (args.format == "json") {
    payload += "{\n";
    payload += "\"process\":" + json_string(summary.process) + ",\n";
    payload += "\"seed\":" + std::to_string(summary.seed) + ",\n";
    payload += "\"reps\":" + std::to_string(summary.reps) + ",\n";
    payload += "\"grid_size\":" + std::to_string(summary.grid_size) + ",\n";
    payload += "\"levels\":" + join_numbers(summary.levels) + ",\n";
    payload += "\"n_values\":[";
    for (std::size_t i = 0; i < summary.n_values.size(); ++i) {
      if (i > 0) payload += ",";
      payload += std::to_string(summary.n_values[i]);
    }
    payload += "],\n";
    payload +=
        "\"mean_abs_error\":" + join_numbers(summary.mean_abs_error) + ",\n";
    payload += "\"level_errors\":[";
    for (std::size_t i = 0; i < summary.level_errors.size(); ++i) {
      if (i > 0) payload += ",";
      payload += join_numbers(summary.level_errors[i]);
    }
    payload += "]\n}\n";
  } else {
    payload = "n,level,mean_abs_error\n";
    for (std::size_t i = 0; i < summary.n_values.size(); ++i) {
      for (std::size_t q = 0; q < summary.levels.size(); ++q) {
        payload += std::to_string(summary.n_values[i]) + "," +
                   format_double(summary.levels[q]) + "," +
                   format_double(summary.level_errors[i][q]) + "\n";
      }
    }
  }
  emit(payload, args.output, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Extremality measures, central regions, and the two-sample "
               "extremality rank test for discretized curves"};
  app.name("fextrem");
  app.require_subcommand(1);

  const std::vector<std::string> kinds = {"hyper", "hypo", "gen-hyper",
                                          "gen-hypo"};
  const std::vector<std::string> formats = {"json", "csv"};

  ExtremalityArgs ex;
  CLI::App* ex_cmd =
      app.add_subcommand("extremality", "Score every curve against its set");
  ex_cmd->add_option("--input", ex.input, "Curve CSV file")->required();
  ex_cmd->add_option("--kind", ex.kind, "Extremality kind")
      ->required()
      ->check(CLI::IsMember(kinds));
  ex_cmd->add_option("--format", ex.format, "Output format")
      ->check(CLI::IsMember(formats));
  ex_cmd->add_option("--output", ex.output, "Output path (default stdout)");

  BandArgs band;
  CLI::App* band_cmd = app.add_subcommand(
      "band", "Trim extreme curves and compute the central envelope");
  band_cmd->add_option("--input", band.input, "Curve CSV file")->required();
  band_cmd->add_option("--hyper-kind", band.hyper_kind, "High-side kind")
      ->check(CLI::IsMember({"hyper", "gen-hyper"}));
  band_cmd->add_option("--hypo-kind", band.hypo_kind, "Low-side kind")
      ->check(CLI::IsMember({"hypo", "gen-hypo"}));
  band_cmd->add_option("--alpha-hyper", band.alpha_hyper,
                       "Fraction trimmed on the high side");
  band_cmd->add_option("--alpha-hypo", band.alpha_hypo,
                       "Fraction trimmed on the low side");
  band_cmd->add_option("--format", band.format, "Output format")
      ->check(CLI::IsMember(formats));
  band_cmd->add_option("--output", band.output, "Output path (default stdout)");

  RankTestArgs rt;
  CLI::App* rt_cmd = app.add_subcommand(
      "ranktest", "Two-sample rank test on extremality versus a reference");
  rt_cmd->add_option("--sample-x", rt.sample_x, "First sample CSV")
      ->required();
  rt_cmd->add_option("--sample-y", rt.sample_y, "Second sample CSV")
      ->required();
  CLI::Option* ref_opt =
      rt_cmd->add_option("--reference", rt.reference, "Reference sample CSV");
  CLI::Option* split_opt =
      rt_cmd->add_option("--split", rt.split,
                         "Carve the reference out of sample X by this "
                         "fraction (requires --seed)")
          ->check(CLI::Range(0.0, 1.0));
  ref_opt->excludes(split_opt);
  rt_cmd->add_option("--kind", rt.kind, "Extremality kind")
      ->required()
      ->check(CLI::IsMember(kinds));
  rt_cmd->add_option("--method", rt.method, "Null distribution method")
      ->check(CLI::IsMember({"auto", "exact", "normal"}));
  rt_cmd->add_option("--tie-policy", rt.tie_policy, "Tie interleaving")
      ->check(CLI::IsMember({"paper-order", "random"}));
  rt_cmd->add_option("--alternative", rt.alternative, "Alternative hypothesis")
      ->check(CLI::IsMember({"less", "two-sided"}));
  CLI::Option* rt_seed = rt_cmd->add_option("--seed", rt.seed, "RNG seed");
  rt_cmd->add_option("--format", rt.format, "Output format")
      ->check(CLI::IsMember(formats));
  rt_cmd->add_option("--output", rt.output, "Output path (default stdout)");

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo consistency check of the measures");
  sim_cmd
      ->add_option("--process", sim.process,
                   "uniform-constant or brownian-like-random-walk")
      ->required();
  sim_cmd->add_option("--n-list", sim.n_list, "Sample sizes")
      ->delimiter(',');
  sim_cmd->add_option("--grid-size", sim.grid_size, "Grid points per curve")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", sim.reps, "Replications")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "RNG seed")->required();
  sim_cmd->add_option("--format", sim.format, "Output format")
      ->check(CLI::IsMember(formats));
  sim_cmd->add_option("--output", sim.output, "Output path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fextrem");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (rt_cmd->parsed()) {
      rt.split_given = split_opt->count() > 0;
      rt.seed_given = rt_seed->count() > 0;
      if (rt.reference.empty() && !rt.split_given)
        throw CLI::RequiredError("--reference or --split");
      if (rt.split_given && !rt.seed_given)
        throw CLI::RequiresError("--split", "--seed");
      if (rt.tie_policy == "random" && !rt.seed_given)
        throw CLI::RequiresError("--tie-policy random", "--seed");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ex_cmd->parsed()) run_extremality(ex, out);
    if (band_cmd->parsed()) run_band(band, out);
    if (rt_cmd->parsed()) run_ranktest(rt, out, err);
    if (sim_cmd->parsed()) run_simulate(sim, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fextrem
