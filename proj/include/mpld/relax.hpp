#pragma once

#include <span>
#include <vector>

#include "mpld/exact.hpp"
#include "mpld/graph.hpp"

namespace mpld {

/// k unit vectors in (k-1) dimensions with pairwise inner product -1/(k-1),
/// constructed analytically (not fitted). Row-major storage.
struct SimplexVectors {
  int k = 0;
  int dim = 0;
  std::vector<double> data;

  std::span<const double> row(int i) const {
    return {data.data() + static_cast<size_t>(i) * dim,
            static_cast<size_t>(dim)};
  }
};

/// Valid for 2 <= k <= 16.
SimplexVectors simplex_vectors(int k);

/// Symmetric affinity matrix X with x_ij = v_i . v_j and unit diagonal.
struct AffinityMatrix {
  int n = 0;
  std::vector<double> x;

  double at(int i, int j) const {
    return x[static_cast<size_t>(i) * n + j];
  }
};

struct RelaxParams {
  int iterations = 500;  // coordinate sweeps per restart
  int restarts = 5;
  unsigned seed = 1;
  double penalty_weight = 10.0;  // squared-hinge weight on the CE floor
  double t_th = 0.9;
  // Working dimension of the unit vectors; 0 picks ~sqrt(2m), never below
  // k-1. Rank k-1 alone converges onto discrete colorings whose affinity
  // matrix over-merges; the higher rank tracks the actual semidefinite
  // optimum and keeps x_ij informative.
  int rank = 0;
};

/// Map a coloring onto simplex vectors; row-major n x (k-1).
std::vector<double> simplex_embedding(const Coloring& coloring);

/// Unit-vector relaxation: one vector per vertex on the (k-2)-sphere,
/// minimizing sum_CE v_i.v_j - alpha * sum_SE v_i.v_j plus a squared hinge
/// keeping CE pairs above -1/(k-1). Multi-restart normalized coordinate
/// descent; the objective never increases within a restart. When a warm
/// start is given, one restart begins from its simplex embedding, so the
/// final objective is at most the embedded objective of that coloring.
/// Deterministic for a fixed seed.
AffinityMatrix solve_relaxation(const DecompositionGraph& g, int k,
                                double alpha, const RelaxParams& params = {},
                                const Coloring* warm_start = nullptr);

/// Relaxation objective (with hinge penalty) of an explicit vector set of
/// `dim` coordinates per vertex (0 means k-1, the embedding layout).
double relaxation_objective(const DecompositionGraph& g, int k, double alpha,
                            double penalty_weight,
                            std::span<const double> vectors, int dim = 0);

/// Greedy rounding: vertex pairs in descending affinity are union-merged
/// while more than k groups remain or while the merge creates no internal
/// conflict edge; groups then receive colors greedily by descending size.
Coloring greedy_mapping(const AffinityMatrix& x, const DecompositionGraph& g,
                        int k, double alpha);

/// Merged graph built by contracting every pair with x_ij >= t_th
/// (transitively). Parallel edges collapse into multiplicities; intra-group
/// conflict edges are dropped but their forced cost is recorded.
struct MergedGraph {
  DecompositionGraph graph;
  std::vector<int> group_of;    // original vertex -> merged vertex
  std::vector<int> ce_weight;   // multiplicity per merged CE edge
  std::vector<int> se_weight;
  long long forced_conflicts = 0;
};

MergedGraph threshold_merge(const AffinityMatrix& x,
                            const DecompositionGraph& g, double t_th);

struct BacktrackResult {
  Coloring coloring;  // expanded to original vertices
  bool fell_back_to_linear = false;
  bool budget_exhausted = false;
};

/// Exhaustive backtracking over merged-group colorings (the weighted exact
/// search), expanded back through the group table. Falls back to the linear
/// solver on the merged graph when it exceeds the search limits.
BacktrackResult backtrack_color(const MergedGraph& merged, int k, double alpha,
                                const SearchLimits& limits = {});

}  // namespace mpld
