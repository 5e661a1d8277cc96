#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pbis/dist3.hpp"
#include "pbis/graph_model.hpp"
#include "pbis/wp_engine.hpp"

namespace pbis {

// Rooted tree with a +-1 type per node. Node 0 is the root.
class TypedTree {
 public:
  static constexpr std::uint32_t kNoParent = 0xffffffffu;

  explicit TypedTree(Spin root_type);

  std::uint32_t add_child(std::uint32_t parent, Spin type);

  std::size_t size() const { return type_.size(); }
  std::uint32_t root() const { return 0; }
  std::uint32_t parent(std::uint32_t v) const { return parent_[v]; }
  Spin type(std::uint32_t v) const { return type_[v]; }
  std::uint32_t depth(std::uint32_t v) const { return depth_[v]; }
  const std::vector<std::uint32_t>& children(std::uint32_t v) const { return children_[v]; }
  std::uint32_t height() const;

  // Reorders the child list of v (used to check order independence).
  void set_children_order(std::uint32_t v, std::vector<std::uint32_t> order);
  // All node types negated.
  TypedTree negated() const;
  // Nodes at depth <= max_depth, renumbered in breadth-first order.
  TypedTree truncated(std::uint32_t max_depth) const;

  // Same tree as a Graph on node ids plus the types as an assignment.
  Graph to_graph() const;
  Assignment types() const { return Assignment(type_); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<Spin> type_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<std::uint32_t>> children_;
};

// Root type: +1, -1, or 0 for a fair coin.
TypedTree sample_tree(double d_plus, double d_minus, std::uint32_t max_depth, int root_type,
                      std::uint64_t seed, std::size_t node_budget = 10'000'000);

// Message sent up by the root after `rounds` rounds, each node starting
// from its own type. Only nodes at depth <= rounds matter.
Message wp_upward(const TypedTree& tree, long long rounds);

// Empirical law of the root message over independent trees with the given
// root type. Subtrees are generated only as far as needed to decide each
// clamped sum, and the last two levels are drawn in bulk from the exact
// one-round message law, so high degrees stay tractable.
Dist3 root_message_distribution(double d_plus, double d_minus, long long rounds,
                                std::uint64_t trials, std::uint64_t seed, int root_type = 1);

// Same quantity from fully materialized trees; only for small degrees.
Dist3 root_message_distribution_full(double d_plus, double d_minus, long long rounds,
                                     std::uint64_t trials, std::uint64_t seed,
                                     int root_type = 1);

// Law of psi(X - Y), X ~ Po(d_plus), Y ~ Po(d_minus), by direct summation.
Dist3 one_round_message_law(double d_plus, double d_minus);

// ---- neighbourhood codes and census ------------------------------------

// Canonical string of the tree cut at `depth`: a type letter followed by
// the sorted codes of the children in brackets.
std::string canonical_code(const TypedTree& tree, std::uint32_t depth);

std::uint64_t code_hash(const std::string& code);

struct Census {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t cyclic = 0;  // neighbourhoods that are not trees
  std::uint64_t total = 0;

  double frequency(const std::string& code) const;
  double cyclic_fraction() const;
  std::size_t num_classes() const { return counts.size(); }
};

// Depth-t neighbourhoods of sampled vertices (all vertices when
// sample_size is 0 or at least n; otherwise uniform with replacement).
Census neighborhood_census(const Graph& g, const Assignment& a, std::uint32_t depth,
                          std::size_t sample_size, std::uint64_t seed);

// Codes of sampled two-type trees with a fair-coin root type.
Census tree_census(double d_plus, double d_minus, std::uint32_t depth, std::uint64_t samples,
                   std::uint64_t seed);

// Total variation between two censuses, the cyclic bucket counting as one
// class. With min_prob > 0 only classes whose frequency reaches min_prob in
// at least one census contribute.
double census_tv(const Census& a, const Census& b, double min_prob = 0.0);

// Number of classes with frequency >= min_prob in at least one census.
std::size_t census_classes_above(const Census& a, const Census& b, double min_prob);

}  // namespace pbis
