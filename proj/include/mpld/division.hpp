#pragma once

#include <span>
#include <vector>

#include "mpld/graph.hpp"

namespace mpld {

/// Induced subgraph with a map from its dense local ids back to the parent.
struct Subgraph {
  DecompositionGraph graph;
  std::vector<int> to_parent;  // local id -> parent id
};

/// Subgraph induced by `vertices` (sorted internally; edges with both
/// endpoints inside are kept and relabeled).
Subgraph induce_subgraph(const DecompositionGraph& g,
                         std::vector<int> vertices);

/// Connected components of the union graph CE ∪ SE, each with its induced
/// subgraph. Singleton vertices form singleton components.
std::vector<Subgraph> independent_components(const DecompositionGraph& g);

struct PeelEntry {
  int vertex;        // parent id
  int d_conf_at_removal;
  int d_stit_at_removal;
};

struct PeelResult {
  Subgraph reduced;
  std::vector<PeelEntry> stack;  // in removal order; replay in reverse
};

/// Iteratively remove non-critical vertices. Default rule: d_conf < k and
/// d_stit < 2, measured in the current reduced graph. With
/// `literal_total_degree_rule` the alternative d_conf + d_stit < k rule is
/// applied instead.
PeelResult peel_low_degree(const DecompositionGraph& g, int k,
                           bool literal_total_degree_rule = false);

/// Pop the peel stack and color each vertex: a color with zero conflicts
/// against already-colored CE neighbors always exists; among those, stitch
/// cost to colored SE neighbors is minimized (smallest index on ties).
/// `colors` is parent-indexed with -1 marking uncolored entries. Throws
/// std::logic_error if no conflict-free color exists (peel bug).
void reinsert_peeled(std::span<const PeelEntry> stack,
                     const DecompositionGraph& g, std::vector<int>& colors,
                     int k, double alpha);

struct ArticulationLink {
  int vertex;  // parent id of the shared articulation vertex
  int comp_a;
  int comp_b;
};

struct BccSplit {
  std::vector<Subgraph> components;
  std::vector<ArticulationLink> links;
};

/// Biconnected components over CE ∪ SE. Articulation vertices are duplicated
/// into each incident component and recorded in `links`. Isolated vertices
/// become singleton components.
BccSplit biconnected_split(const DecompositionGraph& g);

/// Merge per-component colorings into one parent coloring: components are
/// attached in DFS order over the block-cut tree rooted at the largest
/// component, each rotated so its copy of the shared articulation vertex
/// matches the color already fixed.
Coloring merge_at_articulations(const BccSplit& split,
                                std::span<const Coloring> comp_colorings,
                                int parent_vertex_count, int k);

}  // namespace mpld
