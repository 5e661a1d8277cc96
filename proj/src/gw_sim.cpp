#include "pbis/gw_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "pbis/poisson_sampler.hpp"
#include "pbis/rng.hpp"

namespace pbis {

TypedTree::TypedTree(Spin root_type) {
  if (root_type != 1 && root_type != -1) throw InvalidArgument("TypedTree: root type must be +-1");
  parent_.push_back(kNoParent);
  type_.push_back(root_type);
  depth_.push_back(0);
  children_.emplace_back();
}

std::uint32_t TypedTree::add_child(std::uint32_t parent, Spin type) {
  if (parent >= size()) throw InvalidArgument("TypedTree: unknown parent");
  if (type != 1 && type != -1) throw InvalidArgument("TypedTree: type must be +-1");
  const auto id = static_cast<std::uint32_t>(size());
  parent_.push_back(parent);
  type_.push_back(type);
  depth_.push_back(depth_[parent] + 1);
  children_.emplace_back();
  children_[parent].push_back(id);
  return id;
}

std::uint32_t TypedTree::height() const {
  return *std::max_element(depth_.begin(), depth_.end());
}

void TypedTree::set_children_order(std::uint32_t v, std::vector<std::uint32_t> order) {
  auto a = order;
  auto b = children_.at(v);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw InvalidArgument("TypedTree: reorder must be a permutation of the children");
  children_[v] = std::move(order);
}

TypedTree TypedTree::negated() const {
  TypedTree out = *this;
  for (auto& t : out.type_) t = static_cast<Spin>(-t);
  return out;
}

TypedTree TypedTree::truncated(std::uint32_t max_depth) const {
  TypedTree out(type_[0]);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{0, 0}};  // (old, new)
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto [old_id, new_id] = queue[i];
    if (depth_[old_id] >= max_depth) continue;
    for (std::uint32_t c : children_[old_id]) {
      queue.emplace_back(c, out.add_child(new_id, type_[c]));
    }
  }
  return out;
}

Graph TypedTree::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(size() - 1);
  for (std::uint32_t v = 1; v < size(); ++v) edges.emplace_back(parent_[v], v);
  return Graph(size(), std::move(edges));
}

namespace {

Spin draw_root_type(int root_type, Engine& rng) {
  if (root_type == 1 || root_type == -1) return static_cast<Spin>(root_type);
  if (root_type != 0) throw InvalidArgument("root type must be -1, 0 (coin) or +1");
  return (rng() & 1ULL) ? Spin{1} : Spin{-1};
}

struct TreeSampler {
  PoissonSampler same;
  PoissonSampler cross;

  TreeSampler(double d_plus, double d_minus) : same(d_plus), cross(d_minus) {}

  TypedTree operator()(std::uint32_t max_depth, Spin root_type, std::size_t budget,
                       Engine& rng) const {
    TypedTree tree(root_type);
    for (std::uint32_t v = 0; v < tree.size(); ++v) {
      if (tree.depth(v) >= max_depth) continue;
      const std::uint32_t a = same(rng);
      const std::uint32_t b = cross(rng);
      if (tree.size() + a + b > budget) {
        throw BudgetExceeded("sample_tree: more than " + std::to_string(budget) + " nodes");
      }
      const Spin t = tree.type(v);
      for (std::uint32_t i = 0; i < a; ++i) tree.add_child(v, t);
      for (std::uint32_t i = 0; i < b; ++i) tree.add_child(v, static_cast<Spin>(-t));
    }
    return tree;
  }
};

void check_degrees(double d_plus, double d_minus) {
  if (!(d_plus >= 0.0) || !(d_minus >= 0.0)) {
    throw InvalidArgument("degrees must be nonnegative");
  }
}

}  // namespace

TypedTree sample_tree(double d_plus, double d_minus, std::uint32_t max_depth, int root_type,
                      std::uint64_t seed, std::size_t node_budget) {
  check_degrees(d_plus, d_minus);
  Engine rng = make_engine(seed, "gw_sim.tree");
  const Spin rt = draw_root_type(root_type, rng);
  return TreeSampler(d_plus, d_minus)(max_depth, rt, node_budget, rng);
}

Message wp_upward(const TypedTree& tree, long long rounds) {
  if (rounds < 0) throw InvalidArgument("wp_upward: negative number of rounds");
  std::vector<Message> up(tree.size(), 0);
  // Children always carry larger ids than their parent.
  for (std::uint32_t v = static_cast<std::uint32_t>(tree.size()); v-- > 0;) {
    const long long d = tree.depth(v);
    if (d > rounds) continue;
    if (d == rounds) {
      up[v] = tree.type(v);
      continue;
    }
    long long sum = 0;
    for (std::uint32_t c : tree.children(v)) sum += up[c];
    up[v] = psi(sum);
  }
  return up[0];
}

Dist3 one_round_message_law(double d_plus, double d_minus) {
  check_degrees(d_plus, d_minus);
  const long double mx = std::max(d_plus, d_minus);
  const auto size = static_cast<std::size_t>(mx + 40.0L * std::sqrt(mx) + 60.0L);
  auto table = [size](long double mu) {
    std::vector<long double> pmf(size + 2, 0.0L);
    if (mu == 0.0L) {
      pmf[0] = 1.0L;
    } else {
      for (std::size_t k = 0; k < pmf.size(); ++k) {
        const auto kk = static_cast<long double>(k);
        pmf[k] = std::exp(kk * std::log(mu) - mu - std::lgamma(kk + 1.0L));
      }
    }
    std::vector<long double> tail(pmf.size() + 1, 0.0L);
    for (std::size_t k = pmf.size(); k-- > 0;) tail[k] = tail[k + 1] + pmf[k];
    return std::pair{pmf, tail};
  };
  const auto [px, tx] = table(d_plus);
  const auto [py, ty] = table(d_minus);
  long double neg = 0.0L;
  long double zero = 0.0L;
  long double pos = 0.0L;
  for (std::size_t k = 0; k <= size; ++k) {
    neg += px[k] * ty[k + 1];
    zero += px[k] * py[k];
    pos += py[k] * tx[k + 1];
  }
  if (pos >= neg && pos >= zero) {
    pos = 1.0L - neg - zero;
  } else if (zero >= neg) {
    zero = 1.0L - neg - pos;
  } else {
    neg = 1.0L - zero - pos;
  }
  return Dist3(static_cast<double>(neg), static_cast<double>(zero), static_cast<double>(pos));
}

namespace {

// Draws the multiset of n i.i.d. values from a law on {-1, 0, +1}.
class BulkDraw {
 public:
  BulkDraw(const Dist3& law, std::size_t max_n) {
    const auto m = law.precise();
    major_ = static_cast<std::size_t>(law.dominant());
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i != major_) minor_[j++] = i;
    }
    q_ = m[minor_[0]] + m[minor_[1]];
    split_ = q_ > 0.0L ? m[minor_[0]] / q_ : 0.0L;
    odds_ = q_ / (1.0L - q_);
    none_.resize(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
      none_[n] = static_cast<double>(std::exp(static_cast<long double>(n) * std::log1p(-q_)));
    }
  }

  // Sum of n draws.
  long long sum(std::uint32_t n, Engine& rng) const {
    const std::uint32_t k = anomalies(n, rng);
    std::array<long long, 3> c{};
    c[minor_[0]] = sample_binomial(k, split_, rng);
    c[minor_[1]] = k - c[minor_[0]];
    c[major_] = n - k;
    return c[2] - c[0];
  }

 private:
  std::uint32_t anomalies(std::uint32_t n, Engine& rng) const {
    if (q_ == 0.0L || n == 0) return 0;
    if (n >= none_.size() || none_[n] == 0.0) return sample_binomial(n, q_, rng);
    const double u = uniform01(rng);
    double pmf = none_[n];
    double cdf = pmf;
    if (u < cdf) return 0;
    const double odds = static_cast<double>(odds_);
    for (std::uint32_t k = 0; k < n; ++k) {
      pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
      cdf += pmf;
      if (u < cdf) return k + 1;
    }
    return n;
  }

  std::size_t major_ = 2;
  std::array<std::size_t, 2> minor_{};
  long double q_ = 0.0L;
  long double split_ = 0.0L;
  long double odds_ = 0.0L;
  std::vector<double> none_;
};

class LazyRootSampler {
 public:
  LazyRootSampler(double d_plus, double d_minus)
      : same_(d_plus),
        cross_(d_minus),
        bulk_(one_round_message_law(d_plus, d_minus),
              static_cast<std::size_t>(std::max(d_plus, d_minus) +
                                       60.0 * std::sqrt(std::max(d_plus, d_minus)) + 64.0)) {}

  Message message(Spin type, long long rounds, Engine& rng) const {
    if (rounds == 0) return type;
    const std::uint32_t a = same_(rng);
    const std::uint32_t b = cross_(rng);
    if (rounds == 1) return static_cast<Message>(type * psi(static_cast<long long>(a) - b));
    if (rounds == 2) {
      // Children of type s send s * X with X drawn from the one-round law.
      return static_cast<Message>(type * psi(bulk_.sum(a, rng) - bulk_.sum(b, rng)));
    }
    long long partial = 0;
    long long remaining = static_cast<long long>(a) + b;
    for (std::uint32_t i = 0; i < a + b; ++i) {
      const Spin child = i < a ? type : static_cast<Spin>(-type);
      partial += message(child, rounds - 1, rng);
      --remaining;
      if (partial - remaining >= 1) return 1;
      if (partial + remaining <= -1) return -1;
    }
    return psi(partial);
  }

 private:
  PoissonSampler same_;
  PoissonSampler cross_;
  BulkDraw bulk_;
};

Dist3 tally(const std::array<std::uint64_t, 3>& hits, std::uint64_t trials) {
  const auto n = static_cast<double>(trials);
  return Dist3(static_cast<double>(hits[0]) / n, static_cast<double>(hits[1]) / n,
               static_cast<double>(hits[2]) / n);
}

}  // namespace

Dist3 root_message_distribution(double d_plus, double d_minus, long long rounds,
                                std::uint64_t trials, std::uint64_t seed, int root_type) {
  check_degrees(d_plus, d_minus);
  if (rounds < 0) throw InvalidArgument("root_message_distribution: negative rounds");
  if (trials < 1) throw InvalidArgument("root_message_distribution: need at least one trial");
  Engine rng = make_engine(seed, "gw_sim.root_message");
  const LazyRootSampler sampler(d_plus, d_minus);
  std::array<std::uint64_t, 3> hits{};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Spin rt = draw_root_type(root_type, rng);
    ++hits[static_cast<std::size_t>(sampler.message(rt, rounds, rng) + 1)];
  }
  return tally(hits, trials);
}

Dist3 root_message_distribution_full(double d_plus, double d_minus, long long rounds,
                                     std::uint64_t trials, std::uint64_t seed, int root_type) {
  check_degrees(d_plus, d_minus);
  if (rounds < 0) throw InvalidArgument("root_message_distribution_full: negative rounds");
  if (trials < 1) throw InvalidArgument("root_message_distribution_full: need at least one trial");
  Engine rng = make_engine(seed, "gw_sim.root_message_full");
  const TreeSampler sampler(d_plus, d_minus);
  std::array<std::uint64_t, 3> hits{};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Spin rt = draw_root_type(root_type, rng);
    const TypedTree tree = sampler(static_cast<std::uint32_t>(rounds), rt, 10'000'000, rng);
    ++hits[static_cast<std::size_t>(wp_upward(tree, rounds) + 1)];
  }
  return tally(hits, trials);
}

// ---- census -------------------------------------------------------------

std::string canonical_code(const TypedTree& tree, std::uint32_t depth) {
  std::vector<std::string> code(tree.size());
  std::vector<std::string> parts;
  for (std::uint32_t v = static_cast<std::uint32_t>(tree.size()); v-- > 0;) {
    if (tree.depth(v) > depth) continue;
    parts.clear();
    if (tree.depth(v) < depth) {
      for (std::uint32_t c : tree.children(v)) parts.push_back(std::move(code[c]));
    }
    std::sort(parts.begin(), parts.end());
    std::string s(1, tree.type(v) > 0 ? '+' : '-');
    s += '[';
    for (const auto& p : parts) s += p;
    s += ']';
    code[v] = std::move(s);
  }
  return code[0];
}

std::uint64_t code_hash(const std::string& code) { return fnv1a64(code); }

double Census::frequency(const std::string& code) const {
  if (total == 0) return 0.0;
  auto it = counts.find(code);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

double Census::cyclic_fraction() const {
  return total == 0 ? 0.0 : static_cast<double>(cyclic) / static_cast<double>(total);
}

Census neighborhood_census(const Graph& g, const Assignment& a, std::uint32_t depth,
                          std::size_t sample_size, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (a.size() != n) throw InvalidArgument("neighborhood_census: size mismatch");
  Census census;
  if (n == 0) return census;

  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint32_t> node_of(n, 0);
  std::vector<std::uint32_t> level(n, 0);
  std::uint32_t epoch = 0;
  std::vector<Vertex> ball;
  std::vector<std::uint32_t> dist;

  auto visit = [&](Vertex root) {
    ++epoch;
    ball.assign(1, root);
    dist.assign(1, 0);
    stamp[root] = epoch;
    level[root] = 0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (dist[i] == depth) continue;
      for (Vertex w : g.neighbors(ball[i])) {
        if (stamp[w] == epoch) continue;
        stamp[w] = epoch;
        level[w] = dist[i] + 1;
        ball.push_back(w);
        dist.push_back(dist[i] + 1);
      }
    }
    std::size_t edges = 0;
    for (Vertex x : ball) {
      for (Vertex y : g.neighbors(x)) edges += (stamp[y] == epoch && x < y) ? 1 : 0;
    }
    ++census.total;
    if (edges + 1 != ball.size()) {
      ++census.cyclic;
      return;
    }
    // Acyclic: the breadth-first tree is the whole neighbourhood.
    TypedTree tree(a[root]);
    node_of[root] = 0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (dist[i] == depth) continue;
      for (Vertex w : g.neighbors(ball[i])) {
        if (stamp[w] != epoch) continue;
        // Children are the neighbours one level further out.
        if (level[w] != dist[i] + 1) continue;
        node_of[w] = tree.add_child(node_of[ball[i]], a[w]);
      }
    }
    ++census.counts[canonical_code(tree, depth)];
  };

  if (sample_size == 0 || sample_size >= n) {
    for (Vertex v = 0; v < n; ++v) visit(v);
  } else {
    Engine rng = make_engine(seed, "gw_sim.census");
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (std::size_t i = 0; i < sample_size; ++i) visit(pick(rng));
  }
  return census;
}

Census tree_census(double d_plus, double d_minus, std::uint32_t depth, std::uint64_t samples,
                   std::uint64_t seed) {
  check_degrees(d_plus, d_minus);
  Engine rng = make_engine(seed, "gw_sim.tree_census");
  const TreeSampler sampler(d_plus, d_minus);
  Census census;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Spin rt = draw_root_type(0, rng);
    ++census.counts[canonical_code(sampler(depth, rt, 10'000'000, rng), depth)];
    ++census.total;
  }
  return census;
}

namespace {

template <typename Fn>
void for_each_class(const Census& a, const Census& b, Fn fn) {
  const double ta = a.total == 0 ? 1.0 : static_cast<double>(a.total);
  const double tb = b.total == 0 ? 1.0 : static_cast<double>(b.total);
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      fn(static_cast<double>(ia->second) / ta, 0.0);
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      fn(0.0, static_cast<double>(ib->second) / tb);
      ++ib;
    } else {
      fn(static_cast<double>(ia->second) / ta, static_cast<double>(ib->second) / tb);
      ++ia;
      ++ib;
    }
  }
  fn(static_cast<double>(a.cyclic) / ta, static_cast<double>(b.cyclic) / tb);
}

}  // namespace

double census_tv(const Census& a, const Census& b, double min_prob) {
  long double sum = 0.0L;
  for_each_class(a, b, [&](double fa, double fb) {
    if (std::max(fa, fb) >= min_prob) sum += std::fabs(static_cast<long double>(fa) - fb);
  });
  return static_cast<double>(0.5L * sum);
}

std::size_t census_classes_above(const Census& a, const Census& b, double min_prob) {
  std::size_t count = 0;
  for_each_class(a, b, [&](double fa, double fb) {
    if (std::max(fa, fb) >= min_prob && std::max(fa, fb) > 0.0) ++count;
  });
  return count;
}

}  // namespace pbis
