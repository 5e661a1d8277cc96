#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbis/core_extractor.hpp"
#include "pbis/dist3.hpp"
#include "pbis/graph_model.hpp"
#include "pbis/operator_t.hpp"
#include "pbis/wp_engine.hpp"

namespace pbis {

struct ExperimentConfig {
  ModelParams model{100000, 50.0, 1.0, 1};
  CoreParams core{};
  long long rounds = 20;
  double eps = 1e-12;
  double tail_tol = kDefaultTailTol;
  std::size_t max_iter = 10000;
  std::uint64_t phi_mc_samples = 0;  // 0 skips the Monte Carlo cross-check
  bool census = true;
  std::uint32_t census_depth = 1;
  std::size_t census_vertices = 10000;  // 0 = every vertex
  std::uint64_t census_tree_samples = 100000;
  unsigned threads = 1;
  bool record_timing = false;  // wall-clock breaks byte-identical reruns
  std::string out;             // run record path; empty = stdout
  std::string trace_csv;       // optional per-round trace

  void validate() const;
};

// Flat "key = value" text, '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
// Applies one key/value pair; throws InvalidArgument on unknown keys.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
std::string format_config(const ExperimentConfig& cfg);

struct CensusSummary {
  std::uint32_t depth = 0;
  std::uint64_t graph_samples = 0;
  std::uint64_t tree_samples = 0;
  std::size_t graph_classes = 0;
  std::size_t tree_classes = 0;
  double tv_distance = 0.0;
  double cyclic_fraction = 0.0;
};

struct RunRecord {
  ExperimentConfig config;
  std::size_t num_edges = 0;
  std::size_t planted_cut = 0;

  std::optional<std::size_t> core_size;  // absent when d_plus <= 1
  double core_fraction = 0.0;
  bool core_verified = false;
  double gap_lhs = 0.0;  // d_plus - d_minus
  double gap_rhs = 0.0;  // c sqrt(d_plus ln d_plus)
  bool gap_condition_holds = false;

  std::vector<EstimatePoint> trace;
  double estimate = 0.0;             // estimate after the last round
  double normalized_estimate = 0.0;  // divided by n

  Dist3 p_star;
  std::size_t fixed_point_iterations = 0;
  bool fixed_point_converged = false;
  bool p_star_skewed = false;
  double fixed_point_residual = 0.0;
  double phi_star = 0.0;
  double abs_discrepancy = 0.0;  // |normalized_estimate - phi_star|
  double rel_discrepancy = 0.0;  // abs_discrepancy / max(phi_star, 1e-3)

  std::optional<McEstimate> phi_star_mc;
  std::optional<CensusSummary> census;
  std::optional<double> wall_clock_seconds;

  std::vector<std::string> failed_assertions;
  std::string version;

  bool ok() const { return failed_assertions.empty(); }
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

RunRecord run_end_to_end(const ExperimentConfig& config);

// Cartesian product over the four axes, nested in the order d_plus,
// d_minus, n, rounds. Every cell uses the master seed of `base`, so a cell
// reproduces run_end_to_end on the same configuration; cells that differ
// only in rounds share one graph and one WP run. An empty axis gives an
// empty sweep.
struct SweepGrid {
  std::vector<double> d_plus;
  std::vector<double> d_minus;
  std::vector<std::size_t> n;
  std::vector<long long> rounds;
};

std::vector<RunRecord> sweep(const ExperimentConfig& base, const SweepGrid& grid);

// One row per record: d_plus,d_minus,n,rounds,core_size,core_fraction,
// gap_condition_holds,estimate,normalized_estimate,phi_star,
// abs_discrepancy,rel_discrepancy.
std::string sweep_csv(const std::vector<RunRecord>& records);

// t,estimate,normalized_estimate
std::string trace_csv(const std::vector<EstimatePoint>& trace);

std::string library_version();

}  // namespace pbis
