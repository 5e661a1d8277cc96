#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pbis/core_extractor.hpp"
#include "pbis/exact_oracle.hpp"
#include "pbis/experiment.hpp"
#include "pbis/gw_sim.hpp"
#include "pbis/operator_t.hpp"
#include "pbis/rng.hpp"
#include "pbis/wp_engine.hpp"

using namespace pbis;

namespace {

enum ExitCode { kOk = 0, kOtherError = 1, kConfigError = 2, kBudgetError = 3, kAssertionFailed = 4 };

// A hard check on the results failed.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--out", c.out, "output path (stdout when empty)");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json dist_json(const Dist3& p) { return p.to_vector(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planted bisection laboratory: graphs, Warning Propagation, fixed points"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  // generate
  Common gen_c;
  ModelParams gen_mp{1000, 10.0, 2.0, 1};
  auto* gen = app.add_subcommand("generate", "sample a planted bisection graph");
  add_common(gen, gen_c);
  gen->add_option("--n", gen_mp.n, "vertices");
  gen->add_option("--d-plus", gen_mp.d_plus, "same-class degree parameter");
  gen->add_option("--d-minus", gen_mp.d_minus, "cross-class degree parameter");
  gen->callback([&] {
    if (gen_c.out.empty()) throw InvalidArgument("generate: --out <prefix> is required");
    gen_mp.seed = gen_c.seed;
    const auto inst = sample_planted_graph(gen_mp);
    store_instance(inst.graph, inst.sigma, gen_c.out);
    std::cout << dump({{"n", inst.graph.num_vertices()},
                       {"m", inst.graph.num_edges()},
                       {"planted_cut", planted_cut_width(inst.graph, inst.sigma)},
                       {"edges", gen_c.out + ".edges"},
                       {"sigma", gen_c.out + ".sigma"}});
  });

  // wp-run
  Common wp_c;
  std::string wp_graph;
  std::string wp_init = "full-sigma";
  std::string wp_frozen;
  long long wp_rounds = 20;
  double wp_dp = 0.0;
  double wp_dm = 0.0;
  CoreParams wp_core;
  auto* wp = app.add_subcommand("wp-run", "run Warning Propagation and print the estimate trace");
  add_common(wp, wp_c);
  wp->add_option("--graph", wp_graph, "instance prefix (<prefix>.edges, <prefix>.sigma)")->required();
  wp->add_option("--rounds", wp_rounds, "rounds");
  wp->add_option("--init", wp_init, "full-sigma | core-sigma | file")
      ->check(CLI::IsMember({"full-sigma", "core-sigma", "file"}));
  wp->add_option("--frozen", wp_frozen, "partial assignment file for --init file");
  wp->add_option("--d-plus", wp_dp, "degree parameter (core-sigma)");
  wp->add_option("--d-minus", wp_dm, "degree parameter (core-sigma)");
  wp->add_option("--c", wp_core.c, "core slack constant");
  wp->add_option("--outside-cap", wp_core.outside_cap, "core outside-neighbour cap");
  wp->callback([&] {
    const auto inst = load_instance(wp_graph);
    FrozenAssignment f;
    if (wp_init == "full-sigma") {
      f = FrozenAssignment::from(inst.sigma);
    } else if (wp_init == "core-sigma") {
      const CoreSet core = extract_core(inst.graph, inst.sigma, wp_dp, wp_dm, wp_core);
      f = restrict_assignment(inst.sigma, core.members);
    } else {
      if (wp_frozen.empty()) throw InvalidArgument("wp-run: --init file needs --frozen");
      f = load_frozen(wp_frozen, inst.graph.num_vertices());
    }
    emit(wp_c.out, trace_csv(estimate_trace(inst.graph, f, wp_rounds, wp_c.threads)));
  });

  // fixed-point
  Common fp_c;
  double fp_dp = 50.0;
  double fp_dm = 1.0;
  double fp_eps = 1e-12;
  double fp_tail = kDefaultTailTol;
  double fp_cc = 4.0;
  std::size_t fp_iter = 10000;
  auto* fpc = app.add_subcommand("fixed-point", "iterate T from (0,0,1) and evaluate phi");
  add_common(fpc, fp_c);
  fpc->add_option("--d-plus", fp_dp, "same-class degree parameter");
  fpc->add_option("--d-minus", fp_dm, "cross-class degree parameter");
  fpc->add_option("--eps", fp_eps, "step tolerance");
  fpc->add_option("--tail-tol", fp_tail, "truncation tolerance");
  fpc->add_option("--max-iter", fp_iter, "iteration cap");
  fpc->add_option("--c", fp_cc, "constant in the gap condition");
  fpc->callback([&] {
    const auto r = find_fixed_point(fp_dp, fp_dm, fp_eps, fp_iter, fp_tail);
    const long double phi = phi_exact_extended(r.p, fp_dp, fp_dm, fp_tail);
    emit(fp_c.out, dump({{"p_star", dist_json(r.p)},
                         {"phi_star", static_cast<double>(phi)},
                         {"iterations", r.iterations},
                         {"converged", r.converged},
                         {"skewed", r.skewed},
                         {"residual", r.residual},
                         {"gap_condition_holds", gap_condition_holds(fp_dp, fp_dm, fp_cc)}}));
    if (!r.converged) throw AssertionFailure("fixed point iteration did not converge");
  });

  // gw-validate
  Common gw_c;
  double gw_dp = 50.0;
  double gw_dm = 1.0;
  long long gw_t = 5;
  std::uint64_t gw_trials = 100000;
  auto* gw = app.add_subcommand("gw-validate", "root message law on Galton-Watson trees vs T^t");
  add_common(gw, gw_c);
  gw->add_option("--d-plus", gw_dp, "same-type offspring mean");
  gw->add_option("--d-minus", gw_dm, "other-type offspring mean");
  gw->add_option("--t", gw_t, "rounds");
  gw->add_option("--trials", gw_trials, "trees");
  gw->callback([&] {
    const Dist3 emp = root_message_distribution(gw_dp, gw_dm, gw_t, gw_trials, gw_c.seed);
    const Dist3 theory =
        iterate_T(Dist3::point(1), gw_dp, gw_dm, static_cast<std::size_t>(gw_t));
    emit(gw_c.out, dump({{"t", gw_t},
                         {"empirical", dist_json(emp)},
                         {"theory", dist_json(theory)},
                         {"tv_distance", total_variation(emp, theory)}}));
  });

  // census
  Common cs_c;
  std::string cs_graph;
  ModelParams cs_mp{100000, 10.0, 1.0, 1};
  std::uint32_t cs_depth = 2;
  std::size_t cs_sample = 0;
  auto* cs = app.add_subcommand("census", "depth-t neighbourhood census (code_hash,count,frequency)");
  add_common(cs, cs_c);
  cs->add_option("--graph", cs_graph, "instance prefix; generated from --n/--d-plus/--d-minus if absent");
  cs->add_option("--n", cs_mp.n, "vertices when generating");
  cs->add_option("--d-plus", cs_mp.d_plus, "same-class degree when generating");
  cs->add_option("--d-minus", cs_mp.d_minus, "cross-class degree when generating");
  cs->add_option("--depth", cs_depth, "neighbourhood depth");
  cs->add_option("--sample-size", cs_sample, "vertices to sample (0 = all)");
  cs->callback([&] {
    PlantedInstance inst;
    if (cs_graph.empty()) {
      cs_mp.seed = derive_seed(cs_c.seed, "experiment.graph");
      inst = sample_planted_graph(cs_mp);
    } else {
      inst = load_instance(cs_graph);
    }
    const Census census = neighborhood_census(inst.graph, inst.sigma, cs_depth, cs_sample,
                                              derive_seed(cs_c.seed, "experiment.census"));
    std::ostringstream os;
    os.precision(17);
    os << "code_hash,count,frequency\n";
    for (const auto& [code, count] : census.counts) {
      os << std::hex << code_hash(code) << std::dec << ',' << count << ','
         << static_cast<double>(count) / static_cast<double>(census.total) << '\n';
    }
    os << "cyclic," << census.cyclic << ',' << census.cyclic_fraction() << '\n';
    emit(cs_c.out, os.str());
  });

  // oracle-compare
  Common oc_c;
  std::string oc_graph;
  double oc_dp = 0.0;
  double oc_dm = 0.0;
  CoreParams oc_core;
  auto* oc = app.add_subcommand("oracle-compare", "exact bisection vs planted cut vs cut(G, sigma_C)");
  add_common(oc, oc_c);
  oc->add_option("--graph", oc_graph, "instance prefix")->required();
  oc->add_option("--d-plus", oc_dp, "degree parameter for the core")->required();
  oc->add_option("--d-minus", oc_dm, "degree parameter for the core")->required();
  oc->add_option("--c", oc_core.c, "core slack constant");
  oc->add_option("--outside-cap", oc_core.outside_cap, "core outside-neighbour cap");
  oc->callback([&] {
    const auto inst = load_instance(oc_graph);
    const auto bis = min_bisection_exact(inst.graph);
    const std::size_t planted = planted_cut_width(inst.graph, inst.sigma);
    const CoreSet core = extract_core(inst.graph, inst.sigma, oc_dp, oc_dm, oc_core);
    const auto cut_c = min_cut_extension(inst.graph, restrict_assignment(inst.sigma, core.members));
    emit(oc_c.out, dump({{"bis", bis.width},
                         {"planted_width", planted},
                         {"cut_sigma_c", cut_c.width},
                         {"core_size", core.size()},
                         {"equal_flags",
                          {{"bis_eq_cut_sigma_c", bis.width == cut_c.width},
                           {"bis_le_planted", bis.width <= planted}}}}));
    if (bis.width > planted) throw AssertionFailure("bisection width exceeds planted cut");
  });

  // end-to-end
  Common ee_c;
  std::string ee_config;
  std::vector<std::string> ee_set;
  auto* ee = app.add_subcommand("end-to-end", "graph, core, WP trace, fixed point, phi, census");
  add_common(ee, ee_c);
  ee->add_option("--config", ee_config, "key = value file");
  ee->add_option("--set", ee_set, "override key=value (repeatable)");
  auto build_config = [](const std::string& path, const std::vector<std::string>& sets,
                         const Common& c, CLI::App* cmd) {
    ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config(path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InvalidArgument("--set expects key=value");
      set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (cmd->count("--seed") > 0) cfg.model.seed = c.seed;
    if (cmd->count("--threads") > 0) cfg.threads = c.threads;
    if (!c.out.empty()) cfg.out = c.out;
    cfg.validate();
    return cfg;
  };
  ee->callback([&] {
    const ExperimentConfig cfg = build_config(ee_config, ee_set, ee_c, ee);
    const RunRecord r = run_end_to_end(cfg);
    emit(cfg.out, dump(to_json(r)));
    if (!cfg.trace_csv.empty()) emit(cfg.trace_csv, trace_csv(r.trace));
    if (!r.ok()) throw AssertionFailure(r.failed_assertions.front());
  });

  // sweep
  Common sw_c;
  std::string sw_config;
  std::vector<std::string> sw_set;
  SweepGrid grid;
  std::string sw_json;
  auto* sw = app.add_subcommand("sweep", "Cartesian sweep over d_plus, d_minus, n, rounds");
  add_common(sw, sw_c);
  sw->add_option("--config", sw_config, "base key = value file");
  sw->add_option("--set", sw_set, "override key=value (repeatable)");
  sw->add_option("--d-plus", grid.d_plus, "values (default: base)")->delimiter(',');
  sw->add_option("--d-minus", grid.d_minus, "values (default: base)")->delimiter(',');
  sw->add_option("--n", grid.n, "values (default: base)")->delimiter(',');
  sw->add_option("--rounds", grid.rounds, "values (default: base)")->delimiter(',');
  sw->add_option("--json-out", sw_json, "also write all run records as a JSON array");
  sw->callback([&] {
    const ExperimentConfig cfg = build_config(sw_config, sw_set, sw_c, sw);
    if (grid.d_plus.empty()) grid.d_plus = {cfg.model.d_plus};
    if (grid.d_minus.empty()) grid.d_minus = {cfg.model.d_minus};
    if (grid.n.empty()) grid.n = {cfg.model.n};
    if (grid.rounds.empty()) grid.rounds = {cfg.rounds};
    const auto records = sweep(cfg, grid);
    emit(cfg.out, sweep_csv(records));
    if (!sw_json.empty()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : records) arr.push_back(to_json(r));
      emit(sw_json, dump(arr));
    }
    for (const auto& r : records) {
      if (!r.ok()) throw AssertionFailure(r.failed_assertions.front());
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  } catch (const GraphFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kBudgetError;
  } catch (const ToleranceNotMet& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kBudgetError;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return kAssertionFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOtherError;
  }
  return kOk;
}
