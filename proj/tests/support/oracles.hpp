#pragma once

// Brute-force reference implementations used only by the tests. They
// share no code with the library beyond the basic graph types.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pbis/graph_model.hpp"

namespace oracle {

using pbis::Graph;
using pbis::Spin;
using pbis::Vertex;

// Poisson pmf by the product recursion in long double.
inline std::vector<long double> poisson_pmf(long double mu, std::size_t size) {
  std::vector<long double> pmf(size, 0.0L);
  if (mu == 0.0L) {
    pmf[0] = 1.0L;
    return pmf;
  }
  pmf[0] = std::exp(-mu);
  for (std::size_t k = 1; k < size; ++k) pmf[k] = pmf[k - 1] * mu / static_cast<long double>(k);
  return pmf;
}

// Law of Z = sum of Po(d_plus) marks minus sum of Po(d_minus) marks, with
// marks i.i.d. from p = (p(-1), p(0), p(1)). Built as a Poisson mixture of
// repeated convolutions, then one convolution of the two mixtures.
// Returns (P[Z <= -1], P[Z = 0], P[Z >= 1]).
inline std::array<long double, 3> t_by_convolution(const std::array<double, 3>& p, double d_plus,
                                                   double d_minus) {
  auto mixture = [&](double d) {
    const auto terms = static_cast<std::size_t>(d + 15.0 * std::sqrt(d) + 40.0);
    const auto pmf = poisson_pmf(d, terms);
    // index j <-> value j - terms
    std::vector<long double> law(2 * terms + 1, 0.0L);
    std::vector<long double> power(2 * terms + 1, 0.0L);
    power[terms] = 1.0L;  // zero marks
    for (std::size_t a = 0; a < terms; ++a) {
      for (std::size_t j = 0; j < law.size(); ++j) law[j] += pmf[a] * power[j];
      std::vector<long double> next(power.size(), 0.0L);
      for (std::size_t j = 0; j < power.size(); ++j) {
        if (power[j] == 0.0L) continue;
        for (int v = -1; v <= 1; ++v) {
          const long long k = static_cast<long long>(j) + v;
          if (k < 0 || k >= static_cast<long long>(next.size())) continue;
          next[static_cast<std::size_t>(k)] += power[j] * p[static_cast<std::size_t>(v + 1)];
        }
      }
      power.swap(next);
    }
    return std::pair{law, static_cast<long long>(terms)};
  };
  const auto [wp, op] = mixture(d_plus);
  const auto [wm, om] = mixture(d_minus);
  std::array<long double, 3> out{};
  for (std::size_t i = 0; i < wp.size(); ++i) {
    if (wp[i] == 0.0L) continue;
    for (std::size_t j = 0; j < wm.size(); ++j) {
      const long long z = (static_cast<long long>(i) - op) - (static_cast<long long>(j) - om);
      out[static_cast<std::size_t>((z > 0) - (z < 0) + 1)] += wp[i] * wm[j];
    }
  }
  return out;
}

inline std::size_t cut_of(const Graph& g, const std::vector<Spin>& s) {
  std::size_t cut = 0;
  for (const auto& [u, v] : g.edge_list()) cut += s[u] != s[v] ? 1 : 0;
  return cut;
}

// Minimum cut over all extensions of f, enumerating every assignment of
// the free vertices at once.
inline std::size_t min_cut_monolithic(const Graph& g, const pbis::FrozenAssignment& f) {
  std::vector<Vertex> free;
  std::vector<Spin> s(g.num_vertices(), 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (f.contains(v)) s[v] = f.value(v);
    else free.push_back(v);
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) s[free[i]] = (mask >> i) & 1 ? -1 : 1;
    best = std::min(best, cut_of(g, s));
  }
  return best;
}

// Minimum over balanced bipartitions by plain enumeration.
inline std::size_t min_bisection_plain(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<Spin> s(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = (mask >> i) & 1 ? 1 : -1;
      plus += s[i] == 1;
    }
    if (std::llabs(2 * plus - static_cast<long long>(n)) > 1) continue;
    best = std::min(best, cut_of(g, s));
  }
  return best;
}

// Union of every vertex set satisfying the core conditions, found by
// checking all 2^n subsets.
inline std::vector<Vertex> core_by_subsets(const Graph& g, const pbis::Assignment& a,
                                           double d_plus, double d_minus, double c,
                                           std::size_t cap) {
  const std::size_t n = g.num_vertices();
  const double dev = c / 4.0 * std::sqrt(d_plus * std::log(d_plus));
  std::uint64_t all = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u) {
      if (!((mask >> u) & 1)) continue;
      double same = 0, cross = 0, outside = 0;
      for (Vertex w : g.neighbors(u)) {
        (a[w] == a[u] ? same : cross) += 1;
        if (!((mask >> w) & 1)) outside += 1;
      }
      ok = std::fabs(same - d_plus) <= dev && std::fabs(cross - d_minus) <= dev &&
           outside <= static_cast<double>(cap);
    }
    if (ok) all |= mask;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if ((all >> v) & 1) out.push_back(v);
  }
  return out;
}

}  // namespace oracle
