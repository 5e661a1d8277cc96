#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pbis/core_extractor.hpp"
#include "pbis/graph_model.hpp"
#include "pbis/rng.hpp"
#include "pbis/wp_engine.hpp"

using namespace pbis;

namespace {

FrozenAssignment frozen(std::size_t n, std::initializer_list<std::pair<Vertex, int>> values) {
  FrozenAssignment f(n);
  for (auto [v, s] : values) f.set(v, static_cast<Spin>(s));
  return f;
}

Message msg(const Graph& g, const MessageState& s, Vertex v, Vertex w) {
  return s.msg[*g.directed_edge(v, w)];
}

}  // namespace

TEST_CASE("clamp and threshold") {
  CHECK(psi(0) == 0);
  CHECK(psi(5) == 1);
  CHECK(psi(-3) == -1);
  CHECK(psi_tilde(-1) == -1);
  CHECK(psi_tilde(0) == 1);
  CHECK(psi_tilde(2) == 1);
  for (int x = -10; x <= 10; ++x) CHECK(psi(-x) == -psi(x));
}

TEST_CASE("initial messages") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const auto s = init_messages(path, frozen(3, {{0, 1}, {2, -1}}));
  CHECK(s.t == 0);
  CHECK(msg(path, s, 0, 1) == 1);
  CHECK(msg(path, s, 2, 1) == -1);
  CHECK(msg(path, s, 1, 0) == 0);
  CHECK(msg(path, s, 1, 2) == 0);

  const auto empty = init_messages(path, FrozenAssignment(3));
  CHECK(std::all_of(empty.msg.begin(), empty.msg.end(), [](Message m) { return m == 0; }));

  const auto inst = sample_planted_graph({500, 5.0, 1.0, 4});
  const auto full = init_messages(inst.graph, FrozenAssignment::from(inst.sigma));
  for (Vertex v = 0; v < 500; ++v) {
    for (EdgeId e = inst.graph.out_begin(v); e < inst.graph.out_end(v); ++e) {
      CHECK(full.msg[e] == inst.sigma[v]);
    }
  }
}

TEST_CASE("single rounds by hand") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const auto zero = init_messages(path, FrozenAssignment(3));
  const auto next = wp_step(path, zero);
  CHECK(next.t == 1);
  CHECK(next.msg == zero.msg);
  CHECK(zero.t == 0);

  const Graph k2(2, {{0, 1}});
  const auto s1 = wp_step(k2, init_messages(k2, frozen(2, {{0, 1}, {1, -1}})));
  CHECK(s1.msg == std::vector<Message>{0, 0});

  // centre 0, leaves 1..3
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto st = wp_step(star, init_messages(star, frozen(4, {{1, 1}, {2, 1}, {3, -1}})));
  CHECK(msg(star, st, 0, 3) == 1);
  CHECK(msg(star, st, 0, 1) == 0);
  CHECK(msg(star, st, 0, 2) == 0);
  CHECK(msg(star, st, 1, 0) == 0);
}

TEST_CASE("running is repeated stepping") {
  const auto inst = sample_planted_graph({800, 6.0, 2.0, 10});
  const auto f = FrozenAssignment::from(inst.sigma);
  CHECK(wp_run(inst.graph, f, 0) == init_messages(inst.graph, f));
  auto s = init_messages(inst.graph, f);
  for (int t = 1; t <= 6; ++t) {
    s = wp_step(inst.graph, s);
    CHECK(wp_run(inst.graph, f, t) == s);
  }
  CHECK_THROWS_AS(wp_run(inst.graph, f, -1), InvalidArgument);
}

TEST_CASE("clamped rounds keep frozen vertices broadcasting") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const auto f = frozen(3, {{0, 1}});
  const auto s = wp_run_clamped(path, f, 5);
  CHECK(msg(path, s, 0, 1) == 1);
  CHECK(msg(path, s, 1, 2) == 1);
  CHECK(msg(path, wp_run(path, f, 5), 0, 1) == 0);
}

TEST_CASE("vertex field") {
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = init_messages(star, frozen(4, {{1, 1}, {2, 1}, {3, -1}}));
  CHECK(vertex_field(star, s, 0) == 1);
  CHECK(vertex_field(star, s, 1) == 0);
  const Graph lonely(2, {});
  CHECK(vertex_field(lonely, init_messages(lonely, frozen(2, {{0, 1}})), 0) == 0);
}

TEST_CASE("bisection estimate by hand") {
  const Graph path(3, {{0, 1}, {1, 2}});
  CHECK(bisection_estimate(path, init_messages(path, FrozenAssignment(3))) == 0.0);
  CHECK(bisection_estimate(path, init_messages(path, frozen(3, {{0, 1}, {2, -1}}))) == 0.5);
  const Graph k2(2, {{0, 1}});
  CHECK(bisection_estimate(k2, init_messages(k2, frozen(2, {{0, 1}, {1, -1}}))) == 0.0);
  const auto trace = estimate_trace(path, frozen(3, {{0, 1}, {2, -1}}), 3);
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].estimate == 0.5);
  CHECK(trace[0].normalized == doctest::Approx(0.5 / 3.0));
  for (std::size_t t = 0; t < trace.size(); ++t) CHECK(trace[t].t == t);
}

TEST_CASE("cut width") {
  const Graph k2(2, {{0, 1}});
  CHECK(cut_width(k2, Assignment({1, 1})) == 0);
  CHECK(cut_width(k2, Assignment({1, -1})) == 1);
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(cut_width(c4, Assignment({1, -1, 1, -1})) == 4);
  CHECK(cut_width(c4, Assignment({1, 1, 1, 1})) == 0);
}

TEST_CASE("negation equivariance and estimate bounds") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = sample_planted_graph({1500, 7.0, 2.0, seed});
    const auto f = FrozenAssignment::from(inst.sigma);
    for (long long t : {0LL, 1LL, 3LL, 8LL}) {
      const auto pos = wp_run(inst.graph, f, t);
      const auto neg = wp_run(inst.graph, f.negated(), t);
      for (std::size_t e = 0; e < pos.msg.size(); ++e) CHECK(neg.msg[e] == -pos.msg[e]);
      const double est = bisection_estimate(inst.graph, pos);
      CHECK(est >= 0.0);
      CHECK(est <= static_cast<double>(inst.graph.num_edges()));
    }
  }
}

TEST_CASE("thread count does not change results") {
  const auto inst = sample_planted_graph({6000, 12.0, 3.0, 21});
  const auto f = FrozenAssignment::from(inst.sigma);
  const auto ref = wp_run(inst.graph, f, 10, 1);
  for (unsigned th : {2u, 3u, 8u}) {
    CHECK(wp_run(inst.graph, f, 10, th) == ref);
    CHECK(wp_run_clamped(inst.graph, f, 4, th) == wp_run_clamped(inst.graph, f, 4, 1));
  }
  CHECK(wp_run(inst.graph, f, 10, 1) == ref);
}

TEST_CASE("root-directed messages settle once t exceeds the subtree height") {
  Engine rng = make_engine(77, "test.wp.trees");
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    std::vector<Vertex> parent(n, 0);
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
      parent[v] = static_cast<Vertex>(rng() % v);
      edges.emplace_back(parent[v], v);
    }
    const Graph g(n, edges);
    std::vector<std::size_t> height(n, 0);
    for (Vertex v = static_cast<Vertex>(n - 1); v >= 1; --v) {
      height[parent[v]] = std::max(height[parent[v]], height[v] + 1);
    }
    FrozenAssignment f(n);
    for (Vertex v = 1; v < n; ++v) {
      if (g.degree(v) == 1) f.set(v, rng() & 1 ? 1 : -1);
    }
    std::vector<MessageState> states{init_messages(g, f)};
    for (std::size_t t = 1; t <= n + 2; ++t) states.push_back(wp_step(g, states.back()));
    for (Vertex v = 1; v < n; ++v) {
      const EdgeId up = *g.directed_edge(v, parent[v]);
      for (std::size_t t = height[v] + 1; t + 1 < states.size(); ++t) {
        CHECK(states[t].msg[up] == states[t + 1].msg[up]);
      }
    }
  }
}

TEST_CASE("estimate is invariant under relabelling") {
  const auto inst = sample_planted_graph({1200, 8.0, 2.0, 31});
  const std::size_t n = 1200;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Engine rng = make_engine(5, "test.wp.perm");
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const auto& [u, v] : inst.graph.edge_list()) edges.emplace_back(perm[u], perm[v]);
  const Graph h(n, edges);
  std::vector<Spin> s(n);
  for (Vertex v = 0; v < n; ++v) s[perm[v]] = inst.sigma[v];
  const auto f = FrozenAssignment::from(inst.sigma);
  const auto fh = FrozenAssignment::from(Assignment(s));
  for (long long t : {0LL, 2LL, 5LL}) {
    CHECK(bisection_estimate(inst.graph, wp_run(inst.graph, f, t)) ==
          bisection_estimate(h, wp_run(h, fh, t)));
  }
}

TEST_CASE("core vertices keep emitting their planted sign") {
  const double dp = 50.0;
  const double dm = 1.0;
  const auto inst = sample_planted_graph({20000, dp, dm, 1});
  const auto core = extract_core(inst.graph, inst.sigma, dp, dm);
  const auto& g = inst.graph;
  auto full = init_messages(g, FrozenAssignment::from(inst.sigma));
  auto restricted = init_messages(g, restrict_assignment(inst.sigma, core.members));
  std::vector<std::uint8_t> faithful(g.num_vertices(), 1);
  std::vector<std::uint8_t> agree(g.num_vertices(), 1);
  for (int t = 0; t <= 30; ++t) {
    if (t > 0) {
      full = wp_step(g, full);
      restricted = wp_step(g, restricted);
    }
    for (Vertex v : core.members) {
      for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
        if (full.msg[e] != inst.sigma[v]) faithful[v] = 0;
        if (full.msg[e] != restricted.msg[e]) agree[v] = 0;
      }
    }
  }
  double n_faithful = 0.0;
  double n_agree = 0.0;
  for (Vertex v : core.members) {
    n_faithful += faithful[v];
    n_agree += agree[v];
  }
  const double size = static_cast<double>(core.size());
  MESSAGE("core size " << core.size() << ", faithful fraction " << n_faithful / size
                       << ", agreement fraction " << n_agree / size);
  CHECK(n_faithful / size >= 0.99);
  CHECK(n_agree / size >= 0.99);
}
