// Test-only oracles: brute-force references kept independent of the
// implementation paths they check.
#pragma once

#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "mpld/graph.hpp"

namespace mpld::test {

struct EnumBest {
  double weighted = 0.0;
  long long conflicts = 0;
  long long stitches = 0;
};

// Full k^n enumeration; returns the minimum weighted cost and the
// (conflicts, stitches) pair achieving it (lexicographically first coloring).
inline EnumBest enumerate_best(const DecompositionGraph& g, int k,
                               double alpha) {
  EnumBest best;
  bool have = false;
  std::vector<int> col(g.n, 0);
  while (true) {
    long long cn = 0, st = 0;
    for (const auto& [u, v] : g.ce)
      if (col[u] == col[v]) ++cn;
    for (const auto& [u, v] : g.se)
      if (col[u] != col[v]) ++st;
    const double w = static_cast<double>(cn) + alpha * static_cast<double>(st);
    if (!have || w < best.weighted - 1e-12) {
      best = {w, cn, st};
      have = true;
    }
    int pos = g.n - 1;
    while (pos >= 0 && col[pos] == k - 1) col[pos--] = 0;
    if (pos < 0) break;
    ++col[pos];
  }
  return best;
}

// Minimum s-t cut by enumerating every s-side subset. Edges are
// (u, v, capacity) triples.
inline std::int64_t brute_min_cut(
    int n, const std::vector<std::tuple<int, int, std::int64_t>>& edges, int s,
    int t) {
  std::int64_t best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << s)) || (mask & (1u << t))) continue;
    std::int64_t cut = 0;
    for (const auto& [u, v, cap] : edges) {
      const bool su = mask & (1u << u), sv = mask & (1u << v);
      if (su != sv) cut += cap;
    }
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

inline DecompositionGraph random_graph(std::mt19937& rng, int n,
                                       double ce_density, double se_rate) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DecompositionGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double roll = unit(rng);
      if (roll < ce_density)
        g.add_conflict(u, v);
      else if (roll < ce_density + se_rate)
        g.add_stitch(u, v);
    }
  g.canonicalize();
  return g;
}

// Connected undirected weighted graph: random spanning tree plus extras.
inline std::vector<std::tuple<int, int, std::int64_t>> random_connected_edges(
    std::mt19937& rng, int n, int extra_edges, std::int64_t max_cap) {
  std::uniform_int_distribution<std::int64_t> cap(1, max_cap);
  std::vector<std::tuple<int, int, std::int64_t>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.emplace_back(parent(rng), v, cap(rng));
  }
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int e = 0; e < extra_edges; ++e) {
    const int u = any(rng), v = any(rng);
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v), cap(rng));
  }
  return edges;
}

// True iff the CE graph contains a clique on `size` vertices.
inline bool has_ce_clique(const DecompositionGraph& g, int size) {
  Adjacency adj(g);
  std::vector<std::vector<char>> mat(g.n, std::vector<char>(g.n, 0));
  for (const auto& [u, v] : g.ce) mat[u][v] = mat[v][u] = 1;

  std::vector<int> picked;
  auto extend = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(picked.size()) == size) return true;
    for (int v = start; v < g.n; ++v) {
      bool ok = true;
      for (int u : picked)
        if (!mat[u][v]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      picked.push_back(v);
      if (self(self, v + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  return extend(extend, 0);
}

}  // namespace mpld::test
