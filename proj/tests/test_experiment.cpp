#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbis/experiment.hpp"

using namespace pbis;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.model = {4000, 20.0, 2.0, 17};
  cfg.rounds = 6;
  cfg.census_vertices = 1000;
  cfg.census_tree_samples = 5000;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# desk run\n"
      "n = 5000\n"
      "d_plus=30   # trailing comment\n"
      "d_minus = 1.5\n"
      "seed = 9\n"
      "\n"
      "c = 3\n"
      "rounds = 12\n"
      "census = false\n"
      "out = result.json\n");
  CHECK(cfg.model.n == 5000);
  CHECK(cfg.model.d_plus == 30.0);
  CHECK(cfg.model.d_minus == 1.5);
  CHECK(cfg.model.seed == 9);
  CHECK(cfg.core.c == 3.0);
  CHECK(cfg.rounds == 12);
  CHECK_FALSE(cfg.census);
  CHECK(cfg.out == "result.json");
  CHECK(cfg.eps == 1e-12);

  CHECK_THROWS_AS(parse_config("unknown = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("n = many\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("n 5\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("rounds = -2\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("n = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("census = maybe\n"), InvalidArgument);
}

TEST_CASE("config text and JSON round trips") {
  auto cfg = small_config();
  cfg.trace_csv = "trace.csv";
  cfg.phi_mc_samples = 1000;
  CHECK(to_json(parse_config(format_config(cfg))) == to_json(cfg));
  CHECK(to_json(config_from_json(to_json(cfg))) == to_json(cfg));
}

TEST_CASE("run records serialize losslessly") {
  auto cfg = small_config();
  cfg.phi_mc_samples = 20000;
  const auto rec = run_end_to_end(cfg);
  const auto j = to_json(rec);
  const auto back = run_record_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.trace.size() == rec.trace.size());
  CHECK(back.p_star == rec.p_star);
  REQUIRE(back.phi_star_mc.has_value());
  CHECK(back.phi_star_mc->mean == rec.phi_star_mc->mean);
}

TEST_CASE("end to end on a small instance") {
  const auto cfg = small_config();
  const auto rec = run_end_to_end(cfg);
  CHECK(rec.ok());
  CHECK(rec.trace.size() == 7);
  CHECK(rec.estimate == rec.trace.back().estimate);
  CHECK(rec.normalized_estimate == doctest::Approx(rec.estimate / 4000.0));
  REQUIRE(rec.core_size.has_value());
  CHECK(*rec.core_size <= 4000);
  CHECK(rec.core_verified);
  CHECK(rec.gap_lhs == 18.0);
  CHECK(rec.gap_rhs == doctest::Approx(4.0 * std::sqrt(20.0 * std::log(20.0))));
  CHECK(rec.gap_condition_holds == (rec.gap_lhs >= rec.gap_rhs));
  CHECK(rec.fixed_point_converged);
  CHECK(rec.abs_discrepancy == doctest::Approx(std::fabs(rec.normalized_estimate - rec.phi_star)));
  CHECK(rec.rel_discrepancy == doctest::Approx(rec.abs_discrepancy / std::max(rec.phi_star, 1e-3)));
  REQUIRE(rec.census.has_value());
  CHECK(rec.census->graph_samples == 1000);
  CHECK_FALSE(rec.wall_clock_seconds.has_value());
  CHECK(rec.version == library_version());
}

TEST_CASE("reruns are byte identical") {
  const auto cfg = small_config();
  CHECK(to_json(run_end_to_end(cfg)).dump() == to_json(run_end_to_end(cfg)).dump());
  auto other = cfg;
  other.model.seed = 18;
  CHECK(to_json(run_end_to_end(other)).dump() != to_json(run_end_to_end(cfg)).dump());
  auto timed = cfg;
  timed.record_timing = true;
  CHECK(run_end_to_end(timed).wall_clock_seconds.has_value());
}

TEST_CASE("no cross edges means nothing to cut") {
  auto cfg = small_config();
  cfg.model.d_minus = 0.0;
  const auto rec = run_end_to_end(cfg);
  CHECK(rec.planted_cut == 0);
  CHECK(rec.normalized_estimate == 0.0);
  CHECK(rec.phi_star == 0.0);
  CHECK(rec.abs_discrepancy == 0.0);
}

TEST_CASE("low degree skips the core") {
  auto cfg = small_config();
  cfg.model.d_plus = 1.0;
  cfg.model.d_minus = 0.5;
  const auto rec = run_end_to_end(cfg);
  CHECK_FALSE(rec.core_size.has_value());
  CHECK(std::isnan(rec.gap_rhs));
  CHECK_FALSE(rec.gap_condition_holds);
  CHECK(to_json(rec)["gap_rhs"].is_null());
}

TEST_CASE("sweeps") {
  const auto base = small_config();
  CHECK(sweep(base, {}).empty());
  CHECK(sweep(base, {{20.0}, {}, {4000}, {6}}).empty());

  const auto single = sweep(base, {{20.0}, {2.0}, {4000}, {6}});
  REQUIRE(single.size() == 1);
  CHECK(to_json(single[0]).dump() == to_json(run_end_to_end(base)).dump());

  const auto grid = sweep(base, {{10.0, 20.0}, {2.0}, {2000, 4000}, {2, 6}});
  REQUIRE(grid.size() == 8);
  CHECK(grid[0].config.model.d_plus == 10.0);
  CHECK(grid[0].config.model.n == 2000);
  CHECK(grid[0].config.rounds == 2);
  CHECK(grid[1].config.rounds == 6);
  CHECK(grid[2].config.model.n == 4000);
  CHECK(grid[4].config.model.d_plus == 20.0);
  // cells differing only in rounds share the graph and the trace prefix
  CHECK(grid[0].num_edges == grid[1].num_edges);
  CHECK(grid[0].estimate == grid[1].trace[2].estimate);
  for (const auto& r : grid) {
    auto cfg = r.config;
    CHECK(to_json(run_end_to_end(cfg)).dump() == to_json(r).dump());
  }

  const auto csv = sweep_csv(grid);
  CHECK(csv.rfind("d_plus,d_minus,n,rounds,core_size,core_fraction,gap_condition_holds,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("trace csv") {
  const std::vector<EstimatePoint> tr{{0, 1.5, 0.25}, {1, 1.0, 0.125}};
  const auto csv = trace_csv(tr);
  CHECK(csv.rfind("t,estimate,normalized_estimate\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
