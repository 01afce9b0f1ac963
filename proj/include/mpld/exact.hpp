#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "mpld/graph.hpp"

namespace mpld {

struct SearchLimits {
  int max_vertices = 24;
  std::uint64_t max_nodes = 5'000'000;
  std::int64_t time_budget_ms = 10'000;
};

/// Component too large for exhaustive search; callers fall back to a
/// heuristic solver.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactResult {
  Coloring coloring;
  CostReport cost;
  bool optimal = false;  // false means a search budget was exhausted
  std::uint64_t nodes = 0;
};

/// Branch-and-bound color assignment minimizing conflicts + alpha * stitches.
/// Vertices are searched in descending conflict-degree order with canonical
/// color introduction (a new color index may only appear after all smaller
/// ones), and branches are pruned against an admissible per-vertex bound.
/// When the search completes the result is exactly optimal; on budget
/// exhaustion the best incumbent is returned with optimal = false.
/// `warm_start` seeds the incumbent when provided.
ExactResult solve_exact(const DecompositionGraph& g, int k, double alpha,
                        const SearchLimits& limits = {},
                        const Coloring* warm_start = nullptr);

/// Same search over integer edge multiplicities (merged-graph costs):
/// a violated CE edge costs ce_weight[e], a split SE edge alpha * se_weight[e].
ExactResult solve_exact_weighted(const DecompositionGraph& g,
                                 std::span<const int> ce_weight,
                                 std::span<const int> se_weight, int k,
                                 double alpha, const SearchLimits& limits = {},
                                 const Coloring* warm_start = nullptr);

}  // namespace mpld
