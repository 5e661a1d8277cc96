#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbis/errors.hpp"

namespace pbis {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;  // directed edge index in [0, 2m)
using Spin = std::int8_t;      // +1 / -1
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph in CSR form. Neighbour lists are sorted, and the
// directed edge (v -> w) has index offset(v) + rank of w in adj(v), which
// makes the directed-edge index a bijection onto [0, 2m).
class Graph {
 public:
  Graph() = default;

  // Edges may come in any order and orientation; self-loops, duplicates and
  // out-of-range endpoints raise InvalidArgument.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return adj_.size() / 2; }
  std::size_t num_directed_edges() const { return adj_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  EdgeId out_begin(Vertex v) const { return static_cast<EdgeId>(offsets_[v]); }
  EdgeId out_end(Vertex v) const { return static_cast<EdgeId>(offsets_[v + 1]); }
  Vertex target(EdgeId e) const { return adj_[e]; }
  // Index of (w -> v) for e = (v -> w).
  EdgeId reverse(EdgeId e) const { return reverse_[e]; }

  // Index of (v -> w); nullopt if {v, w} is not an edge.
  std::optional<EdgeId> directed_edge(Vertex v, Vertex w) const;
  bool has_edge(Vertex v, Vertex w) const { return directed_edge(v, w).has_value(); }

  // Sorted list of undirected edges with u < v.
  std::vector<Edge> edge_list() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<EdgeId> reverse_;
};

// Total +-1 labelling of the vertices. The planted assignment is one of
// these with class sizes differing by at most one.
struct Assignment {
  std::vector<Spin> spins;

  Assignment() = default;
  explicit Assignment(std::vector<Spin> s);

  std::size_t size() const { return spins.size(); }
  Spin operator[](Vertex v) const { return spins[v]; }
  std::size_t count(Spin s) const;
  bool is_balanced() const;
  Assignment negated() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

using PlantedAssignment = Assignment;

// Partial +-1 labelling with explicit support.
class FrozenAssignment {
 public:
  FrozenAssignment() = default;
  explicit FrozenAssignment(std::size_t n) : values_(n, 0) {}

  std::size_t num_vertices() const { return values_.size(); }
  void set(Vertex v, Spin s);
  void clear(Vertex v) { values_.at(v) = 0; }
  bool contains(Vertex v) const { return values_[v] != 0; }
  // 0 when v is outside the support.
  Spin value(Vertex v) const { return values_[v]; }
  std::size_t support_size() const;
  std::vector<Vertex> support() const;
  FrozenAssignment negated() const;

  static FrozenAssignment from(const Assignment& a);

  friend bool operator==(const FrozenAssignment&, const FrozenAssignment&) = default;

 private:
  std::vector<Spin> values_;
};

struct ModelParams {
  std::size_t n = 0;
  double d_plus = 0.0;
  double d_minus = 0.0;
  std::uint64_t seed = 0;

  double p_plus() const { return 2.0 * d_plus / static_cast<double>(n); }
  double p_minus() const { return 2.0 * d_minus / static_cast<double>(n); }
  void validate() const;
};

struct PlantedInstance {
  Graph graph;
  PlantedAssignment sigma;
};

PlantedInstance sample_planted_graph(const ModelParams& params);

// Edges whose endpoints are in different classes.
std::size_t planted_cut_width(const Graph& g, const PlantedAssignment& a);

struct ClassDegrees {
  std::size_t same = 0;
  std::size_t cross = 0;
};

ClassDegrees class_degrees(const Graph& g, const PlantedAssignment& a, Vertex v);

// ---- text formats -------------------------------------------------------
//
// Edge list:   "n m\n" followed by m lines "u v\n", 0 <= u < v < n, sorted.
// Assignment:  n lines "v s\n" with s in {-1, 1}, sorted by v.

enum class FormatErrorKind {
  kMalformed,
  kHeaderMismatch,
  kDuplicateEdge,
  kSelfLoop,
  kIndexOutOfRange,
  kBadSpin,
  kIo,
};

class GraphFormatError : public Error {
 public:
  GraphFormatError(FormatErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  FormatErrorKind kind() const { return kind_; }

 private:
  FormatErrorKind kind_;
};

Graph load_graph(const std::filesystem::path& path);
Assignment load_assignment(const std::filesystem::path& path, std::size_t n);
void store_graph(const Graph& g, const std::filesystem::path& path);
void store_assignment(const Assignment& a, const std::filesystem::path& path);

// Writes `<prefix>.edges` and `<prefix>.sigma`.
void store_instance(const Graph& g, const Assignment& a, const std::filesystem::path& prefix);
PlantedInstance load_instance(const std::filesystem::path& prefix);

// Partial assignment: any number of "v s" lines, each vertex at most once.
FrozenAssignment load_frozen(const std::filesystem::path& path, std::size_t n);
FrozenAssignment parse_frozen(const std::string& text, std::size_t n);

Graph parse_graph(const std::string& text);
Assignment parse_assignment(const std::string& text, std::size_t n);
std::string format_graph(const Graph& g);
std::string format_assignment(const Assignment& a);

}  // namespace pbis
