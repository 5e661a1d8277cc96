#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbis/core_extractor.hpp"
#include "pbis/graph_model.hpp"
#include "pbis/rng.hpp"
#include "support/oracles.hpp"

using namespace pbis;

namespace {

Assignment spins(std::initializer_list<int> s) {
  std::vector<Spin> v;
  for (int x : s) v.push_back(static_cast<Spin>(x));
  return Assignment(v);
}

Assignment alternating(std::size_t n) {
  std::vector<Spin> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i % 2 == 0 ? 1 : -1;
  return Assignment(s);
}

}  // namespace

TEST_CASE("deviation bound and gap condition") {
  CHECK(deviation_bound(4.0, 50.0) == doctest::Approx(std::sqrt(50.0 * std::log(50.0))));
  CHECK(deviation_bound(8.0, 2.0) == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0))));
  CHECK(deviation_bound(8.0, 2.0) == doctest::Approx(2.3548).epsilon(1e-4));
  CHECK_THROWS_AS(deviation_bound(4.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(deviation_bound(4.0, 0.0), InvalidArgument);
  CHECK(gap_condition_holds(50.0, 1.0, 1.0));
  CHECK_FALSE(gap_condition_holds(50.0, 1.0, 4.0));
  CHECK_FALSE(gap_condition_holds(1.0, 0.0, 0.1));
}

TEST_CASE("degenerate parameters are rejected") {
  const Graph empty(4, {});
  CHECK_THROWS_AS(extract_core(empty, alternating(4), 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(extract_core(empty, alternating(4), 3.0, 1.0, {0.0, 100}), InvalidArgument);
  CHECK_THROWS_AS(extract_core(empty, alternating(3), 3.0, 1.0), InvalidArgument);
}

TEST_CASE("disjoint edges with a wide deviation keep every vertex") {
  const Graph g(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const auto a = spins({1, 1, -1, -1, 1, -1, 1, -1});
  const auto core = extract_core(g, a, 2.0, 0.1, {8.0, 100});
  CHECK(core.size() == 8);
  CHECK(core.deviation == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0))));
  CHECK(oracle::core_by_subsets(g, a, 2.0, 0.1, 8.0, 100) == core.members);
}

TEST_CASE("peeling agrees with subset enumeration on small graphs") {
  Engine rng = make_engine(2024, "test.core");
  int nonempty = 0;
  int proper = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + trial % 9;  // up to 12
    const double d_plus = 1.5 + 3.0 * uniform01(rng);
    const double d_minus = 1.5 * uniform01(rng);
    const double c = 0.5 + 3.0 * uniform01(rng);
    const std::size_t cap = trial % 3;
    const auto inst = sample_planted_graph({n, std::min(d_plus, n / 2.0), d_minus, rng()});
    const double dp = std::min(d_plus, n / 2.0);
    if (dp <= 1.0) continue;
    const auto core = extract_core(inst.graph, inst.sigma, dp, d_minus, {c, cap});
    const auto expected = oracle::core_by_subsets(inst.graph, inst.sigma, dp, d_minus, c, cap);
    CHECK(core.members == expected);
    CHECK(satisfies_core_property(inst.graph, inst.sigma, dp, d_minus, {c, cap}, core.members));
    nonempty += core.size() > 0;
    proper += core.size() > 0 && core.size() < n;
  }
  // the sample must exercise both the peeling and the retention paths
  CHECK(nonempty > 20);
  CHECK(proper > 5);
}

TEST_CASE("core membership indicator matches the member list") {
  const auto inst = sample_planted_graph({5000, 20.0, 2.0, 3});
  const auto core = extract_core(inst.graph, inst.sigma, 20.0, 2.0);
  CHECK(std::is_sorted(core.members.begin(), core.members.end()));
  std::size_t flagged = 0;
  for (Vertex v = 0; v < 5000; ++v) flagged += core.contains(v);
  CHECK(flagged == core.size());
  for (Vertex v : core.members) CHECK(core.contains(v));
  CHECK(satisfies_core_property(inst.graph, inst.sigma, 20.0, 2.0, {}, core.members));
}

TEST_CASE("post-hoc verification rejects sets breaking either condition") {
  const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto a = spins({1, 1, 1, 1, 1});
  const std::vector<Vertex> hub{0};
  CHECK(satisfies_core_property(star, a, 4.0, 0.0, {0.1, 100}, hub));
  CHECK_FALSE(satisfies_core_property(star, a, 4.0, 0.0, {0.1, 3}, hub));
  const std::vector<Vertex> leaf{1};
  CHECK_FALSE(satisfies_core_property(star, a, 4.0, 0.0, {0.1, 100}, leaf));
  CHECK(satisfies_core_property(star, a, 4.0, 0.0, {0.1, 0}, std::vector<Vertex>{}));
}

TEST_CASE("larger c never shrinks the core") {
  const auto inst = sample_planted_graph({4000, 15.0, 3.0, 11});
  std::size_t prev = 0;
  for (double c : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto core = extract_core(inst.graph, inst.sigma, 15.0, 3.0, {c, 100});
    CHECK(core.size() >= prev);
    prev = core.size();
  }
  const auto loose = extract_core(inst.graph, inst.sigma, 15.0, 3.0, {4.0, 100});
  const auto tight = extract_core(inst.graph, inst.sigma, 15.0, 3.0, {1.0, 100});
  for (Vertex v : tight.members) CHECK(loose.contains(v));
}

TEST_CASE("component closure") {
  const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
  auto core_of = [&](std::vector<Vertex> members) {
    CoreSet cs;
    cs.in_core.assign(4, 0);
    for (Vertex v : members) cs.in_core[v] = 1;
    cs.members = std::move(members);
    return cs;
  };
  CHECK(component_closure(path, core_of({2}), 0) == std::vector<Vertex>{0, 1, 2});
  CHECK(component_closure(path, core_of({}), 0) == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(component_closure(path, core_of({0, 2}), 1) == std::vector<Vertex>{0, 1, 2});
  CHECK(component_closure(path, core_of({1}), 0) == std::vector<Vertex>{0, 1});

  const Graph split(5, {{0, 1}, {2, 3}, {3, 4}});
  CoreSet none;
  none.in_core.assign(5, 0);
  CHECK(component_closure(split, none, 4) == std::vector<Vertex>{2, 3, 4});
  CHECK(component_closure(split, none, 0) == std::vector<Vertex>{0, 1});
}

TEST_CASE("closure of a vertex whose neighbourhood lies in the core") {
  const auto inst = sample_planted_graph({3000, 20.0, 2.0, 8});
  const auto core = extract_core(inst.graph, inst.sigma, 20.0, 2.0);
  int checked = 0;
  for (Vertex v = 0; v < 3000 && checked < 50; ++v) {
    auto nb = inst.graph.neighbors(v);
    if (!std::all_of(nb.begin(), nb.end(), [&](Vertex w) { return core.contains(w); })) continue;
    std::vector<Vertex> expected(nb.begin(), nb.end());
    expected.push_back(v);
    std::sort(expected.begin(), expected.end());
    CHECK(component_closure(inst.graph, core, v) == expected);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("restricting an assignment") {
  const auto a = spins({1, -1, -1, 1});
  const std::vector<Vertex> all{0, 1, 2, 3};
  CHECK(restrict_assignment(a, all) == FrozenAssignment::from(a));
  CHECK(restrict_assignment(a, std::vector<Vertex>{}).support_size() == 0);
  const auto one = restrict_assignment(a, std::vector<Vertex>{0});
  CHECK(one.support() == std::vector<Vertex>{0});
  CHECK(one.value(0) == 1);
  CHECK(one.num_vertices() == 4);
}
