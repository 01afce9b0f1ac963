#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mpld {

/// Undirected edge stored with the smaller endpoint first.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Decomposition graph {V, CE, SE}. Conflict edges (CE) join shapes that must
/// land on different masks; stitch edges (SE) join pieces of the same polygon
/// that cost a stitch when split across masks. Friendly edges (FE) are an
/// optional same-color hint used as a tie-break by the linear solver.
///
/// Vertices are dense ids 0..n-1. CE and SE must be disjoint; see validate().
struct DecompositionGraph {
  int n = 0;
  std::vector<Edge> ce;
  std::vector<Edge> se;
  std::vector<Edge> fe;

  DecompositionGraph() = default;
  explicit DecompositionGraph(int vertex_count) : n(vertex_count) {}

  void add_conflict(int u, int v) { ce.push_back(make_edge(u, v)); }
  void add_stitch(int u, int v) { se.push_back(make_edge(u, v)); }
  void add_friendly(int u, int v) { fe.push_back(make_edge(u, v)); }

  /// Sort each edge list and drop duplicates.
  void canonicalize();

  bool has_conflict_edge(int u, int v) const;
};

/// Per-vertex neighbor lists, one list per edge kind. Built once, O(n + m).
struct Adjacency {
  std::vector<std::vector<int>> conflict;
  std::vector<std::vector<int>> stitch;
  std::vector<std::vector<int>> friendly;

  explicit Adjacency(const DecompositionGraph& g);
};

/// Total assignment vertex -> mask id in [0, k).
struct Coloring {
  std::vector<int> color;
  int k = 0;
};

struct CostReport {
  long long conflicts = 0;  // CE edges with equal endpoint colors
  long long stitches = 0;   // SE edges with different endpoint colors
  double alpha = 0.0;
  double weighted = 0.0;    // conflicts + alpha * stitches
};

/// Count conflicts and stitches of a coloring. Throws std::invalid_argument
/// if the coloring length does not match the graph.
CostReport evaluate_cost(const DecompositionGraph& g, const Coloring& c,
                         double alpha);

/// Shift the colors of `vertices` by i modulo k, everything else untouched.
/// Requires 0 <= i < k.
Coloring rotate_colors(const Coloring& c, std::span<const int> vertices, int i);

/// (conflict degree, stitch degree) of vertex v.
std::pair<int, int> degrees(const DecompositionGraph& g, int v);

/// All invariant violations (self loop, CE/SE overlap, dangling endpoint,
/// duplicate edge); empty result means the graph is well formed.
std::vector<std::string> validate(const DecompositionGraph& g);

}  // namespace mpld
