#pragma once

#include <cstdint>

#include "pbis/graph_model.hpp"
#include "pbis/wp_engine.hpp"

namespace pbis {

inline constexpr std::size_t kMaxExactVertices = 22;

struct CutResult {
  std::size_t width = 0;
  Assignment witness;
};

// Minimum number of cut edges over bipartitions whose sides differ in size
// by at most one. Vertex 0 is placed on +1; among optimal witnesses the
// lexicographically smallest (-1 before +1) is returned. n <= 22.
CutResult min_bisection_exact(const Graph& g);

// Minimum cut over all total extensions of f, without balance constraint.
// Each connected component of the graph induced on the free vertices is
// optimized separately; components may have at most 22 vertices. Ties are
// broken towards the lexicographically smallest extension.
CutResult min_cut_extension(const Graph& g, const FrozenAssignment& f);

struct CutDifferenceReport {
  Message message = 0;     // settled message from u towards v
  long long field = 0;     // sum of settled messages u receives from its subtree
  std::size_t cut_plus = 0;   // cut of u's subtree with u frozen to +1
  std::size_t cut_minus = 0;  // same with u frozen to -1
  bool holds = false;         // message sign agrees with the strictly smaller cut
};

// On a tree with frozen vertices f, looks at the subtree hanging off u
// when the tree is rooted at v. Runs WP with frozen vertices always sending
// their value until the messages settle, then compares the two exact cuts
// of the subtree with u frozen to +1 and to -1 (other frozen vertices kept).
CutDifferenceReport cut_difference_check(const Graph& tree, const FrozenAssignment& f, Vertex u,
                                         Vertex v);

}  // namespace pbis
