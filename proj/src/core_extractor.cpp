#include "pbis/core_extractor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace pbis {

void CoreParams::validate() const {
  if (!(c > 0.0)) throw InvalidArgument("core: c must be positive");
}

double deviation_bound(double c, double d_plus) {
  if (!(d_plus > 1.0)) {
    throw InvalidArgument("core: deviation bound needs d_plus > 1 (ln d_plus must be positive)");
  }
  return c / 4.0 * std::sqrt(d_plus * std::log(d_plus));
}

bool gap_condition_holds(double d_plus, double d_minus, double c) {
  if (!(d_plus > 1.0)) return false;
  return d_plus - d_minus >= c * std::sqrt(d_plus * std::log(d_plus));
}

namespace {

bool degree_ok(const Graph& g, const PlantedAssignment& a, Vertex v, double d_plus,
               double d_minus, double dev) {
  const auto cd = class_degrees(g, a, v);
  return std::abs(static_cast<double>(cd.same) - d_plus) <= dev &&
         std::abs(static_cast<double>(cd.cross) - d_minus) <= dev;
}

}  // namespace

CoreSet extract_core(const Graph& g, const PlantedAssignment& a, double d_plus, double d_minus,
                     const CoreParams& cp) {
  cp.validate();
  if (a.size() != g.num_vertices()) throw InvalidArgument("extract_core: size mismatch");
  const double dev = deviation_bound(cp.c, d_plus);
  const std::size_t n = g.num_vertices();

  std::vector<std::uint8_t> in(n, 0);
  for (Vertex v = 0; v < n; ++v) in[v] = degree_ok(g, a, v, d_plus, d_minus, dev) ? 1 : 0;

  std::vector<std::size_t> outside(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) continue;
    for (Vertex w : g.neighbors(v)) outside[v] += in[w] ? 0 : 1;
    if (outside[v] > cp.outside_cap) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (!in[v]) continue;
    in[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (in[w] && ++outside[w] == cp.outside_cap + 1) queue.push_back(w);
    }
  }

  CoreSet core;
  core.in_core = std::move(in);
  for (Vertex v = 0; v < n; ++v) {
    if (core.in_core[v]) core.members.push_back(v);
  }
  core.params = cp;
  core.deviation = dev;
  return core;
}

bool satisfies_core_property(const Graph& g, const PlantedAssignment& a, double d_plus,
                             double d_minus, const CoreParams& cp,
                             std::span<const Vertex> members) {
  const double dev = deviation_bound(cp.c, d_plus);
  std::vector<std::uint8_t> in(g.num_vertices(), 0);
  for (Vertex v : members) in.at(v) = 1;
  for (Vertex v : members) {
    if (!degree_ok(g, a, v, d_plus, d_minus, dev)) return false;
    std::size_t out = 0;
    for (Vertex w : g.neighbors(v)) out += in[w] ? 0 : 1;
    if (out > cp.outside_cap) return false;
  }
  return true;
}

std::vector<Vertex> component_closure(const Graph& g, const CoreSet& core, Vertex v) {
  if (v >= g.num_vertices()) {
    throw InvalidArgument("component_closure: unknown vertex " + std::to_string(v));
  }
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<Vertex> members{v};
  seen[v] = 1;
  for (Vertex w : g.neighbors(v)) {
    seen[w] = 1;
    members.push_back(w);
  }
  // Every member outside the core pulls in its whole neighbourhood.
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex u = members[i];
    if (core.contains(u)) continue;
    for (Vertex w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        members.push_back(w);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

FrozenAssignment restrict_assignment(const Assignment& a, std::span<const Vertex> vertices) {
  FrozenAssignment f(a.size());
  for (Vertex v : vertices) {
    if (v >= a.size()) throw InvalidArgument("restrict_assignment: vertex out of range");
    f.set(v, a[v]);
  }
  return f;
}

}  // namespace pbis
