#include "pbis/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "pbis/gw_sim.hpp"
#include "pbis/rng.hpp"

#ifndef PBIS_VERSION
#define PBIS_VERSION "dev"
#endif

namespace pbis {

std::string library_version() { return std::string("pbis ") + PBIS_VERSION + " (" + __VERSION__ + ")"; }

namespace {

using Clock = std::chrono::steady_clock;

// Everything for one (d_plus, d_minus, n) cell, recorded for several
// round counts from a single WP run.
std::vector<RunRecord> run_cell(const ExperimentConfig& config, const std::vector<long long>& rounds) {
  config.validate();
  const auto started = Clock::now();
  const std::uint64_t master = config.model.seed;
  const auto& mp = config.model;

  RunRecord base;
  base.config = config;
  base.version = library_version();

  ModelParams graph_params = mp;
  graph_params.seed = derive_seed(master, "experiment.graph");
  const PlantedInstance inst = sample_planted_graph(graph_params);
  const Graph& g = inst.graph;
  base.num_edges = g.num_edges();
  base.planted_cut = planted_cut_width(g, inst.sigma);

  base.gap_lhs = mp.d_plus - mp.d_minus;
  base.gap_rhs = mp.d_plus > 1.0 ? config.core.c * std::sqrt(mp.d_plus * std::log(mp.d_plus))
                                 : std::nan("");
  base.gap_condition_holds = gap_condition_holds(mp.d_plus, mp.d_minus, config.core.c);
  if (mp.d_plus > 1.0) {
    const CoreSet core = extract_core(g, inst.sigma, mp.d_plus, mp.d_minus, config.core);
    base.core_size = core.size();
    base.core_fraction = static_cast<double>(core.size()) / static_cast<double>(mp.n);
    base.core_verified =
        satisfies_core_property(g, inst.sigma, mp.d_plus, mp.d_minus, config.core, core.members);
    if (!base.core_verified) base.failed_assertions.push_back("core property check failed");
  }

  const long long max_rounds = *std::max_element(rounds.begin(), rounds.end());
  const auto trace =
      estimate_trace(g, FrozenAssignment::from(inst.sigma), max_rounds, config.threads);
  for (const auto& pt : trace) {
    if (pt.estimate < 0.0 || pt.estimate > static_cast<double>(g.num_edges())) {
      base.failed_assertions.push_back("estimate outside [0, m] at t = " + std::to_string(pt.t));
    }
  }

  const FixedPointResult fp =
      find_fixed_point(mp.d_plus, mp.d_minus, config.eps, config.max_iter, config.tail_tol);
  base.p_star = fp.p;
  base.fixed_point_iterations = fp.iterations;
  base.fixed_point_converged = fp.converged;
  base.p_star_skewed = fp.skewed;
  base.fixed_point_residual = fp.residual;
  if (!fp.converged) base.failed_assertions.push_back("fixed point iteration did not converge");
  base.phi_star = phi_exact(fp.p, mp.d_plus, mp.d_minus, config.tail_tol);
  if (config.phi_mc_samples > 0) {
    base.phi_star_mc = phi_mc(fp.p, mp.d_plus, mp.d_minus, config.phi_mc_samples,
                              derive_seed(master, "experiment.phi_mc"));
  }

  if (config.census) {
    const Census graph_census = neighborhood_census(g, inst.sigma, config.census_depth,
                                                    config.census_vertices,
                                                    derive_seed(master, "experiment.census"));
    const Census trees = tree_census(mp.d_plus, mp.d_minus, config.census_depth,
                                     config.census_tree_samples,
                                     derive_seed(master, "experiment.tree_census"));
    CensusSummary cs;
    cs.depth = config.census_depth;
    cs.graph_samples = graph_census.total;
    cs.tree_samples = trees.total;
    cs.graph_classes = graph_census.num_classes();
    cs.tree_classes = trees.num_classes();
    cs.tv_distance = census_tv(graph_census, trees);
    cs.cyclic_fraction = graph_census.cyclic_fraction();
    base.census = cs;
  }

  if (config.record_timing) {
    base.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  }

  std::vector<RunRecord> out;
  for (long long t : rounds) {
    RunRecord r = base;
    r.config.rounds = t;
    r.trace.assign(trace.begin(), trace.begin() + t + 1);
    r.estimate = r.trace.back().estimate;
    r.normalized_estimate = r.trace.back().normalized;
    r.abs_discrepancy = std::fabs(r.normalized_estimate - r.phi_star);
    r.rel_discrepancy = r.abs_discrepancy / std::max(r.phi_star, 1e-3);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

RunRecord run_end_to_end(const ExperimentConfig& config) {
  return run_cell(config, {config.rounds}).front();
}

std::vector<RunRecord> sweep(const ExperimentConfig& base, const SweepGrid& grid) {
  std::vector<RunRecord> out;
  if (grid.d_plus.empty() || grid.d_minus.empty() || grid.n.empty() || grid.rounds.empty()) {
    return out;
  }
  for (double dp : grid.d_plus) {
    for (double dm : grid.d_minus) {
      for (std::size_t n : grid.n) {
        ExperimentConfig cfg = base;
        cfg.model.d_plus = dp;
        cfg.model.d_minus = dm;
        cfg.model.n = n;
        cfg.rounds = *std::max_element(grid.rounds.begin(), grid.rounds.end());
        for (auto& r : run_cell(cfg, grid.rounds)) out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::string sweep_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "d_plus,d_minus,n,rounds,core_size,core_fraction,gap_condition_holds,estimate,"
        "normalized_estimate,phi_star,abs_discrepancy,rel_discrepancy\n";
  for (const auto& r : records) {
    os << r.config.model.d_plus << ',' << r.config.model.d_minus << ',' << r.config.model.n << ','
       << r.config.rounds << ',';
    if (r.core_size) os << *r.core_size;
    os << ',' << r.core_fraction << ',' << (r.gap_condition_holds ? 1 : 0) << ',' << r.estimate
       << ',' << r.normalized_estimate << ',' << r.phi_star << ',' << r.abs_discrepancy << ','
       << r.rel_discrepancy << '\n';
  }
  return os.str();
}

std::string trace_csv(const std::vector<EstimatePoint>& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,estimate,normalized_estimate\n";
  for (const auto& pt : trace) os << pt.t << ',' << pt.estimate << ',' << pt.normalized << '\n';
  return os.str();
}

// ---- JSON ---------------------------------------------------------------

namespace {

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double number_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j;
  j["config"] = to_json(r.config);
  j["num_edges"] = r.num_edges;
  j["planted_cut"] = r.planted_cut;
  j["core_size"] = r.core_size ? nlohmann::json(*r.core_size) : nlohmann::json(nullptr);
  j["core_fraction"] = r.core_fraction;
  j["core_verified"] = r.core_verified;
  j["gap_condition"] = {{"lhs", r.gap_lhs},
                        {"rhs", number_or_null(r.gap_rhs)},
                        {"holds", r.gap_condition_holds}};
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& pt : r.trace) {
    trace.push_back({{"t", pt.t}, {"estimate", pt.estimate}, {"normalized", pt.normalized}});
  }
  j["trace"] = std::move(trace);
  j["estimate"] = r.estimate;
  j["normalized_estimate"] = r.normalized_estimate;
  j["p_star"] = r.p_star.to_vector();
  j["fixed_point"] = {{"iterations", r.fixed_point_iterations},
                      {"converged", r.fixed_point_converged},
                      {"skewed", r.p_star_skewed},
                      {"residual", r.fixed_point_residual}};
  j["phi_star"] = r.phi_star;
  j["abs_discrepancy"] = r.abs_discrepancy;
  j["rel_discrepancy"] = r.rel_discrepancy;
  if (r.phi_star_mc) {
    j["phi_star_mc"] = {{"mean", r.phi_star_mc->mean}, {"std_error", r.phi_star_mc->std_error}};
  }
  if (r.census) {
    const auto& c = *r.census;
    j["census"] = {{"depth", c.depth},
                   {"graph_samples", c.graph_samples},
                   {"tree_samples", c.tree_samples},
                   {"graph_classes", c.graph_classes},
                   {"tree_classes", c.tree_classes},
                   {"tv_distance", c.tv_distance},
                   {"cyclic_fraction", c.cyclic_fraction}};
  }
  if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
  j["failed_assertions"] = r.failed_assertions;
  j["version"] = r.version;
  return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.config = config_from_json(j.at("config"));
  r.num_edges = j.at("num_edges").get<std::size_t>();
  r.planted_cut = j.at("planted_cut").get<std::size_t>();
  if (!j.at("core_size").is_null()) r.core_size = j.at("core_size").get<std::size_t>();
  r.core_fraction = j.at("core_fraction").get<double>();
  r.core_verified = j.at("core_verified").get<bool>();
  const auto& gap = j.at("gap_condition");
  r.gap_lhs = gap.at("lhs").get<double>();
  r.gap_rhs = number_or_nan(gap.at("rhs"));
  r.gap_condition_holds = gap.at("holds").get<bool>();
  for (const auto& pt : j.at("trace")) {
    r.trace.push_back({pt.at("t").get<std::size_t>(), pt.at("estimate").get<double>(),
                       pt.at("normalized").get<double>()});
  }
  r.estimate = j.at("estimate").get<double>();
  r.normalized_estimate = j.at("normalized_estimate").get<double>();
  const auto ps = j.at("p_star").get<std::vector<double>>();
  r.p_star.minus = ps.at(0);
  r.p_star.zero = ps.at(1);
  r.p_star.plus = ps.at(2);
  const auto& fp = j.at("fixed_point");
  r.fixed_point_iterations = fp.at("iterations").get<std::size_t>();
  r.fixed_point_converged = fp.at("converged").get<bool>();
  r.p_star_skewed = fp.at("skewed").get<bool>();
  r.fixed_point_residual = fp.at("residual").get<double>();
  r.phi_star = j.at("phi_star").get<double>();
  r.abs_discrepancy = j.at("abs_discrepancy").get<double>();
  r.rel_discrepancy = j.at("rel_discrepancy").get<double>();
  if (j.contains("phi_star_mc")) {
    r.phi_star_mc = McEstimate{j["phi_star_mc"].at("mean").get<double>(),
                               j["phi_star_mc"].at("std_error").get<double>()};
  }
  if (j.contains("census")) {
    const auto& c = j.at("census");
    CensusSummary cs;
    cs.depth = c.at("depth").get<std::uint32_t>();
    cs.graph_samples = c.at("graph_samples").get<std::uint64_t>();
    cs.tree_samples = c.at("tree_samples").get<std::uint64_t>();
    cs.graph_classes = c.at("graph_classes").get<std::size_t>();
    cs.tree_classes = c.at("tree_classes").get<std::size_t>();
    cs.tv_distance = c.at("tv_distance").get<double>();
    cs.cyclic_fraction = c.at("cyclic_fraction").get<double>();
    r.census = cs;
  }
  if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
  r.failed_assertions = j.at("failed_assertions").get<std::vector<std::string>>();
  r.version = j.at("version").get<std::string>();
  return r;
}

}  // namespace pbis
