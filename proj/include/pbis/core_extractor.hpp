#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbis/graph_model.hpp"

namespace pbis {

struct CoreParams {
  double c = 4.0;
  std::size_t outside_cap = 100;

  void validate() const;
};

// (c/4) * sqrt(d_plus * ln d_plus); requires d_plus > 1.
double deviation_bound(double c, double d_plus);

// d_plus - d_minus >= c * sqrt(d_plus * ln d_plus).
bool gap_condition_holds(double d_plus, double d_minus, double c);

struct CoreSet {
  std::vector<Vertex> members;        // ascending
  std::vector<std::uint8_t> in_core;  // indicator over all vertices
  CoreParams params;
  double deviation = 0.0;

  std::size_t size() const { return members.size(); }
  bool contains(Vertex v) const { return in_core[v] != 0; }
};

// Largest U such that every u in U has both class degrees within
// `deviation` of (d_plus, d_minus) and at most outside_cap neighbours
// outside U. Valid sets are closed under union, so peeling the
// degree-passing vertices down to a stable set yields the maximum.
CoreSet extract_core(const Graph& g, const PlantedAssignment& a, double d_plus, double d_minus,
                     const CoreParams& cp = {});

// Checks both defining conditions for an arbitrary vertex set.
bool satisfies_core_property(const Graph& g, const PlantedAssignment& a, double d_plus,
                             double d_minus, const CoreParams& cp,
                             std::span<const Vertex> members);

// Least set containing v and its neighbours that is closed under adding
// all neighbours of its non-core members. Ascending.
std::vector<Vertex> component_closure(const Graph& g, const CoreSet& core, Vertex v);

FrozenAssignment restrict_assignment(const Assignment& a, std::span<const Vertex> vertices);

}  // namespace pbis
