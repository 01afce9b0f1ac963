#pragma once

#include <vector>

#include "mpld/graph.hpp"

namespace mpld {

/// Near-descending conflict-degree buckets, built in one pass. For k masks:
/// vec1 holds d_conf > k+2, vec2 holds k < d_conf <= k+2, vec3 the rest.
struct OrderBuckets {
  std::vector<int> vec1, vec2, vec3;

  std::vector<int> concatenated() const;
};

OrderBuckets build_order_buckets(const DecompositionGraph& g,
                                 const Adjacency& adj, int k);

/// Cheapest color for v against the colored part of the graph: fewest new
/// conflicts + alpha * new stitches; ties prefer the color most frequent
/// among v's colored friendly neighbors, then the smallest index.
/// `colors` uses -1 for uncolored vertices.
int min_cost_color(const Adjacency& adj, const std::vector<int>& colors, int v,
                   int k, double alpha);

/// One pass in vertex-id order.
Coloring sequence_coloring(const DecompositionGraph& g, const Adjacency& adj,
                           int k, double alpha);

/// One pass over vec1, vec2, vec3.
Coloring degree_coloring(const DecompositionGraph& g, const Adjacency& adj,
                         const OrderBuckets& buckets, int k, double alpha);

/// Three rounds over the bucket order: greedy until every color has been
/// used once, then vertices with a single conflict-free color, then the rest.
Coloring three_round_coloring(const DecompositionGraph& g,
                              const Adjacency& adj, const OrderBuckets& buckets,
                              int k, double alpha);

/// One improvement pass in vertex-id order; each vertex moves to its
/// cheapest color with all others fixed. Never increases the weighted cost.
Coloring post_refinement(const DecompositionGraph& g, const Adjacency& adj,
                         const Coloring& coloring, double alpha,
                         bool to_fixpoint = false);

struct LinearOptions {
  bool refine_to_fixpoint = false;
  bool literal_peel_rule = false;
  std::vector<double>* order_costs = nullptr;  // costs of C1, C2, C3 if set
};

/// The full linear-time assignment: peel non-critical vertices, color the
/// rest with three orders and keep the best, post-refine, then reinsert the
/// peeled vertices conflict-free.
Coloring linear_assign(const DecompositionGraph& g, int k, double alpha,
                       const LinearOptions& options = {});

}  // namespace mpld
