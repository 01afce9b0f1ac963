#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpld/graph.hpp"

namespace mpld {

/// Capacities are kept in tenths so the 1.4 stitch weight stays exact.
constexpr std::int64_t kCapScale = 10;

/// Flow network with paired arcs: arc i and arc i^1 are each other's reverse.
struct FlowNetwork {
  int n = 0;
  std::vector<int> arc_to;
  std::vector<std::int64_t> arc_cap;
  std::vector<std::vector<int>> out;  // arc ids leaving each vertex

  explicit FlowNetwork(int vertex_count = 0)
      : n(vertex_count), out(vertex_count) {}

  void add_arc_pair(int u, int v, std::int64_t cap_uv, std::int64_t cap_vu);
  void add_undirected(int u, int v, std::int64_t cap) {
    add_arc_pair(u, v, cap, cap);
  }
};

struct MaxFlowResult {
  std::int64_t value = 0;
  std::vector<std::uint8_t> source_side;  // residual-reachable from s
};

/// Dinic blocking flow on a scratch copy of the capacities; the stored
/// network is never mutated. Requires s != t.
MaxFlowResult max_flow(const FlowNetwork& net, int s, int t);

/// CE edges get capacity 1.0, SE edges `stitch_weight` (default 1.4),
/// both scaled by kCapScale.
FlowNetwork weighted_network(const DecompositionGraph& g,
                             double stitch_weight = 1.4);

struct GhTreeEdge {
  int u = 0, v = 0;
  std::int64_t flow_tenths = 0;
};

/// n-1 weighted tree edges; the minimum weight on the u-v tree path equals
/// max-flow(u, v) in the source network.
struct GomoryHuTree {
  int n = 0;
  std::vector<GhTreeEdge> edges;
};

/// Gusfield construction: n-1 max-flow calls, all on the original network.
/// Throws std::invalid_argument on a disconnected network.
GomoryHuTree build_gomory_hu(const FlowNetwork& net);

/// Round a tenths weight to the nearest integer, half away from zero
/// (34 -> 3, 38 -> 4, 35 -> 4).
int round_weight_tenths(std::int64_t tenths);

struct RoundedTreeEdge {
  int u = 0, v = 0;
  int weight = 0;  // rounded masks
  std::int64_t raw_tenths = 0;
};

struct RoundedTree {
  int n = 0;
  std::vector<RoundedTreeEdge> edges;
};

RoundedTree refine_and_round(const GomoryHuTree& tree);

struct CutRecord {
  int tree_u = 0, tree_v = 0;
  int weight = 0;
  std::vector<Edge> crossing_ce;  // from the defining flow bipartition
  std::vector<Edge> crossing_se;
  int comp_a = 0, comp_b = 0;
};

struct KCutPartition {
  std::vector<int> comp_of;
  int comp_count = 1;
  std::vector<CutRecord> cuts;
};

/// Remove tree edges whose rounded weight is below k and report the resulting
/// partition. An edge is only removed when the true edge set crossing its
/// tree bipartition also rounds below k and carries at most one stitch edge;
/// this keeps every removed cut rotation-mergeable without new conflicts.
KCutPartition remove_kcuts(const RoundedTree& tree, const FlowNetwork& net,
                           const DecompositionGraph& g, int k,
                           double stitch_weight = 1.4);

struct RotationMergeReport {
  long long crossing_conflicts = 0;
  long long crossing_stitches = 0;
  std::vector<int> rotation_of_comp;
};

/// Combine per-cut components into one coloring of the full graph. `colors`
/// holds each vertex's color from its component's solution; components are
/// attached in DFS preorder over the component tree (rooted at the largest
/// component), each trying all k rotations and keeping the one minimizing
/// (crossing conflicts, crossing stitches, rotation index) against the
/// already-attached set.
RotationMergeReport merge_with_rotation(const DecompositionGraph& g,
                                        const KCutPartition& parts,
                                        std::vector<int>& colors, int k);

}  // namespace mpld
