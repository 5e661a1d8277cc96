#include "pbis/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pbis/rng.hpp"

namespace pbis {

Graph::Graph(std::size_t n, std::vector<Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw InvalidArgument("graph: too many vertices");
  }
  if (edges.size() > std::numeric_limits<EdgeId>::max() / 2) {
    throw InvalidArgument("graph: too many edges for 32-bit directed edge ids");
  }
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidArgument("graph: edge endpoint out of range");
    }
    if (u == v) throw InvalidArgument("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    throw InvalidArgument("graph: duplicate edge " + std::to_string(it->first) + " " +
                          std::to_string(it->second));
  }

  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];

  adj_.resize(2 * edges.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Sorted (u, v) with u < v: scanning in order writes every list in
  // ascending order, since a vertex first receives its smaller neighbours
  // (as the second endpoint) and then its larger ones.
  for (const auto& [u, v] : edges) adj_[fill[v]++] = u;
  for (const auto& [u, v] : edges) adj_[fill[u]++] = v;

  reverse_.resize(adj_.size());
  // For e = (v -> w) with v < w, the twin (w -> v) is found by walking each
  // list once: the neighbours of w smaller than w appear in the same order
  // as the vertices v that list w.
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
      const Vertex w = adj_[e];
      if (w <= v) continue;
      const std::size_t twin = cursor[w]++;
      reverse_[e] = static_cast<EdgeId>(twin);
      reverse_[twin] = static_cast<EdgeId>(e);
    }
  }
}

std::optional<EdgeId> Graph::directed_edge(Vertex v, Vertex w) const {
  if (v >= num_vertices() || w >= num_vertices()) return std::nullopt;
  auto nb = neighbors(v);
  auto it = std::lower_bound(nb.begin(), nb.end(), w);
  if (it == nb.end() || *it != w) return std::nullopt;
  return static_cast<EdgeId>(offsets_[v] + static_cast<std::size_t>(it - nb.begin()));
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex v = 0; v < num_vertices(); ++v) {
    for (Vertex w : neighbors(v)) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

// ---- assignments --------------------------------------------------------

Assignment::Assignment(std::vector<Spin> s) : spins(std::move(s)) {
  for (Spin x : spins) {
    if (x != 1 && x != -1) throw InvalidArgument("assignment: spins must be +1 or -1");
  }
}

std::size_t Assignment::count(Spin s) const {
  return static_cast<std::size_t>(std::count(spins.begin(), spins.end(), s));
}

bool Assignment::is_balanced() const {
  const auto plus = count(1);
  const auto minus = spins.size() - plus;
  return (plus > minus ? plus - minus : minus - plus) <= 1;
}

Assignment Assignment::negated() const {
  Assignment out = *this;
  for (auto& s : out.spins) s = static_cast<Spin>(-s);
  return out;
}

void FrozenAssignment::set(Vertex v, Spin s) {
  if (s != 1 && s != -1) throw InvalidArgument("frozen assignment: spin must be +1 or -1");
  values_.at(v) = s;
}

std::size_t FrozenAssignment::support_size() const {
  return values_.size() - static_cast<std::size_t>(std::count(values_.begin(), values_.end(), 0));
}

std::vector<Vertex> FrozenAssignment::support() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < values_.size(); ++v) {
    if (values_[v] != 0) out.push_back(v);
  }
  return out;
}

FrozenAssignment FrozenAssignment::negated() const {
  FrozenAssignment out = *this;
  for (auto& s : out.values_) s = static_cast<Spin>(-s);
  return out;
}

FrozenAssignment FrozenAssignment::from(const Assignment& a) {
  FrozenAssignment f;
  f.values_ = a.spins;
  return f;
}

// ---- sampling -----------------------------------------------------------

void ModelParams::validate() const {
  if (n < 2) throw InvalidArgument("model: need n >= 2");
  if (!(d_plus >= 0.0) || !(d_minus >= 0.0)) {
    throw InvalidArgument("model: degrees must be non-negative");
  }
  if (p_plus() > 1.0) throw InvalidArgument("model: p_plus = 2 d_plus / n exceeds 1");
  if (p_minus() > 1.0) throw InvalidArgument("model: p_minus = 2 d_minus / n exceeds 1");
}

namespace {

// Number of failures before the next success, for 0 < p < 1.
class SkipSampler {
 public:
  explicit SkipSampler(double p) : p_(p) {
    if (p_ > 0.0 && p_ < 1.0) dist_ = std::geometric_distribution<long long>(p_);
  }
  bool never() const { return p_ <= 0.0; }
  long long operator()(Engine& rng) {
    if (p_ >= 1.0) return 0;
    return dist_(rng);
  }

 private:
  double p_;
  std::geometric_distribution<long long> dist_;
};

void sample_within(const std::vector<Vertex>& members, double p, Engine& rng,
                   std::vector<Edge>& out) {
  SkipSampler skip(p);
  if (skip.never()) return;
  const long long k = static_cast<long long>(members.size());
  long long v = 1;
  long long w = -1;
  while (v < k) {
    w += 1 + skip(rng);
    while (w >= v && v < k) {
      w -= v;
      ++v;
    }
    if (v < k) out.emplace_back(members[static_cast<std::size_t>(w)], members[static_cast<std::size_t>(v)]);
  }
}

void sample_across(const std::vector<Vertex>& left, const std::vector<Vertex>& right,
                   double p, Engine& rng, std::vector<Edge>& out) {
  SkipSampler skip(p);
  if (skip.never() || left.empty() || right.empty()) return;
  const long long cols = static_cast<long long>(right.size());
  const long long total = static_cast<long long>(left.size()) * cols;
  long long idx = -1;
  while (true) {
    idx += 1 + skip(rng);
    if (idx >= total) break;
    out.emplace_back(left[static_cast<std::size_t>(idx / cols)],
                     right[static_cast<std::size_t>(idx % cols)]);
  }
}

}  // namespace

PlantedInstance sample_planted_graph(const ModelParams& params) {
  params.validate();
  const std::size_t n = params.n;

  Engine label_rng = make_engine(params.seed, "graph_model.assignment");
  const Spin larger = (label_rng() & 1ULL) ? Spin{1} : Spin{-1};
  std::vector<Spin> spins(n, static_cast<Spin>(-larger));
  std::fill(spins.begin(), spins.begin() + static_cast<std::ptrdiff_t>((n + 1) / 2), larger);
  std::shuffle(spins.begin(), spins.end(), label_rng);

  std::vector<Vertex> plus;
  std::vector<Vertex> minus;
  for (Vertex v = 0; v < n; ++v) (spins[v] == 1 ? plus : minus).push_back(v);

  Engine edge_rng = make_engine(params.seed, "graph_model.edges");
  std::vector<Edge> edges;
  const double expected = params.p_plus() * 0.5 *
                              (static_cast<double>(plus.size()) * static_cast<double>(plus.size()) +
                               static_cast<double>(minus.size()) * static_cast<double>(minus.size())) +
                          params.p_minus() * static_cast<double>(plus.size()) *
                              static_cast<double>(minus.size());
  edges.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  sample_within(plus, params.p_plus(), edge_rng, edges);
  sample_within(minus, params.p_plus(), edge_rng, edges);
  sample_across(plus, minus, params.p_minus(), edge_rng, edges);

  return {Graph(n, std::move(edges)), Assignment(std::move(spins))};
}

std::size_t planted_cut_width(const Graph& g, const PlantedAssignment& a) {
  if (a.size() != g.num_vertices()) throw InvalidArgument("planted_cut_width: size mismatch");
  std::size_t cut = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Vertex w : g.neighbors(v)) {
      if (v < w && a[v] != a[w]) ++cut;
    }
  }
  return cut;
}

ClassDegrees class_degrees(const Graph& g, const PlantedAssignment& a, Vertex v) {
  if (v >= g.num_vertices() || v >= a.size()) {
    throw InvalidArgument("class_degrees: unknown vertex " + std::to_string(v));
  }
  ClassDegrees out;
  for (Vertex w : g.neighbors(v)) {
    if (a[w] == a[v]) {
      ++out.same;
    } else {
      ++out.cross;
    }
  }
  return out;
}

}  // namespace pbis
