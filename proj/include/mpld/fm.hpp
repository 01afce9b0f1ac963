#pragma once

#include "mpld/graph.hpp"

namespace mpld {

/// Weighted-cost decrease of moving only v to `to_color`: positive gains
/// improve the coloring. Matches evaluate_cost differences exactly.
double compute_gain(const Adjacency& adj, const Coloring& coloring, int v,
                    int to_color, double alpha);

/// Move-based improvement from a seeded random start. Each pass moves every
/// vertex exactly once, always applying the maximum-gain (vertex, color)
/// move (ties: smaller vertex, then smaller color), then rolls back to the
/// best prefix of the pass; passes stop when the best prefix gain is <= 0.
Coloring fm_color(const DecompositionGraph& g, int k, double alpha,
                  unsigned seed, int max_passes = 50);

}  // namespace mpld
