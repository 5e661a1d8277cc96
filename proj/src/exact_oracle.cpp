#include "pbis/exact_oracle.hpp"

#include <bit>
#include <limits>
#include <string>

namespace pbis {
namespace {

// Spins from a mask over `order`: bit i set means order[i] gets -1.
void apply_mask(std::uint32_t mask, const std::vector<Vertex>& order, std::vector<Spin>& spins) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    spins[order[i]] = (mask >> i) & 1U ? Spin{-1} : Spin{1};
  }
}

// Is mask `a` lexicographically smaller than `b` (lowest bit first, set
// bit = -1 = smaller)?
bool lex_smaller(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

}  // namespace

CutResult min_bisection_exact(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxExactVertices) {
    throw BudgetExceeded("min_bisection_exact: n = " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxExactVertices));
  }
  if (n == 0) return {0, Assignment()};

  // Vertex 0 stays +1; bit i of the mask flips vertex i + 1 to -1.
  const std::size_t free = n - 1;
  std::vector<Spin> spins(n, 1);
  long long cut = 0;
  long long minus = 0;
  auto balanced = [&] { return std::llabs(static_cast<long long>(n) - 2 * minus) <= 1; };

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint32_t best_mask = 0;
  std::uint32_t mask = 0;
  if (balanced()) {
    best = 0;
    best_mask = 0;
  }
  const std::uint64_t states = std::uint64_t{1} << free;
  for (std::uint64_t i = 1; i < states; ++i) {
    const int bit = std::countr_zero(i);
    const Vertex v = static_cast<Vertex>(bit + 1);
    long long same = 0;
    for (Vertex w : g.neighbors(v)) same += spins[w] == spins[v] ? 1 : -1;
    cut += same;  // flipping v cuts its agreeing edges and heals the others
    spins[v] = static_cast<Spin>(-spins[v]);
    minus += spins[v] == -1 ? 1 : -1;
    mask ^= 1U << bit;
    if (!balanced()) continue;
    const auto c = static_cast<std::size_t>(cut);
    if (c < best || (c == best && lex_smaller(mask, best_mask))) {
      best = c;
      best_mask = mask;
    }
  }

  std::vector<Vertex> order(free);
  for (std::size_t i = 0; i < free; ++i) order[i] = static_cast<Vertex>(i + 1);
  std::vector<Spin> witness(n, 1);
  apply_mask(best_mask, order, witness);
  return {best, Assignment(std::move(witness))};
}

CutResult min_cut_extension(const Graph& g, const FrozenAssignment& f) {
  const std::size_t n = g.num_vertices();
  if (f.num_vertices() != n) throw InvalidArgument("min_cut_extension: size mismatch");
  std::vector<Spin> spins(n, 0);
  std::size_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (f.contains(v)) spins[v] = f.value(v);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!f.contains(v)) continue;
    for (Vertex w : g.neighbors(v)) {
      if (v < w && f.contains(w) && spins[v] != spins[w]) ++total;
    }
  }

  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> comp;
  for (Vertex start = 0; start < n; ++start) {
    if (f.contains(start) || seen[start]) continue;
    comp.assign(1, start);
    seen[start] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!f.contains(w) && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    if (comp.size() > kMaxExactVertices) {
      throw BudgetExceeded("min_cut_extension: free component of " + std::to_string(comp.size()) +
                           " vertices exceeds " + std::to_string(kMaxExactVertices));
    }
    std::sort(comp.begin(), comp.end());

    // Start from all +1 and walk a Gray code; cost counts edges inside the
    // component and edges to frozen neighbours.
    for (Vertex v : comp) spins[v] = 1;
    long long cost = 0;
    for (Vertex v : comp) {
      for (Vertex w : g.neighbors(v)) {
        if (spins[w] == 0) continue;
        if (f.contains(w) || v < w) cost += spins[v] != spins[w] ? 1 : 0;
      }
    }
    long long best = cost;
    std::uint32_t best_mask = 0;
    std::uint32_t mask = 0;
    const std::uint64_t states = std::uint64_t{1} << comp.size();
    for (std::uint64_t i = 1; i < states; ++i) {
      const int bit = std::countr_zero(i);
      const Vertex v = comp[static_cast<std::size_t>(bit)];
      long long delta = 0;
      for (Vertex w : g.neighbors(v)) {
        if (spins[w] == 0) continue;
        delta += spins[w] == spins[v] ? 1 : -1;
      }
      cost += delta;
      spins[v] = static_cast<Spin>(-spins[v]);
      mask ^= 1U << bit;
      if (cost < best || (cost == best && lex_smaller(mask, best_mask))) {
        best = cost;
        best_mask = mask;
      }
    }
    apply_mask(best_mask, comp, spins);
    total += static_cast<std::size_t>(best);
  }
  return {total, Assignment(std::move(spins))};
}

CutDifferenceReport cut_difference_check(const Graph& tree, const FrozenAssignment& f, Vertex u,
                                         Vertex v) {
  const std::size_t n = tree.num_vertices();
  if (f.num_vertices() != n) throw InvalidArgument("cut_difference_check: size mismatch");
  if (u >= n || v >= n || u == v) {
    throw InvalidArgument("cut_difference_check: need distinct vertices u, v");
  }
  if (f.contains(u)) throw InvalidArgument("cut_difference_check: u must not be frozen");

  // Connected with n - 1 edges, i.e. a tree.
  std::vector<Vertex> parent(n, n);
  std::vector<Vertex> order{v};
  parent[v] = v;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : tree.neighbors(order[i])) {
      if (parent[w] == n) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  if (tree.num_edges() + 1 != n || order.size() != n) {
    throw InvalidArgument("cut_difference_check: input is not a tree");
  }

  const MessageState settled = wp_run_clamped(tree, f, static_cast<long long>(n) + 1);
  const Vertex up = parent[u];
  CutDifferenceReport report;
  report.message = settled.msg[*tree.directed_edge(u, up)];
  for (Vertex w : tree.neighbors(u)) {
    if (w != up) report.field += settled.msg[*tree.directed_edge(w, u)];
  }

  // Subtree of u, relabelled 0..k-1.
  std::vector<Vertex> sub{u};
  std::vector<std::uint32_t> index(n, 0);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    index[sub[i]] = static_cast<std::uint32_t>(i);
    for (Vertex w : tree.neighbors(sub[i])) {
      if (w != parent[sub[i]]) sub.push_back(w);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < sub.size(); ++i) {
    edges.emplace_back(index[parent[sub[i]]], static_cast<Vertex>(i));
  }
  const Graph g(sub.size(), std::move(edges));
  FrozenAssignment fz(sub.size());
  for (std::size_t i = 1; i < sub.size(); ++i) {
    if (f.contains(sub[i])) fz.set(static_cast<Vertex>(i), f.value(sub[i]));
  }
  fz.set(0, 1);
  report.cut_plus = min_cut_extension(g, fz).width;
  fz.set(0, -1);
  report.cut_minus = min_cut_extension(g, fz).width;

  if (report.message == 1) {
    report.holds = report.cut_plus < report.cut_minus;
  } else if (report.message == -1) {
    report.holds = report.cut_minus < report.cut_plus;
  } else {
    report.holds = report.cut_plus == report.cut_minus;
  }
  return report;
}

}  // namespace pbis
