#include "mpld/relax.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mpld/linear.hpp"

namespace mpld {

SimplexVectors simplex_vectors(int k) {
  if (k < 2 || k > 16) throw std::invalid_argument("k must be in [2, 16]");
  SimplexVectors out;
  out.k = k;
  out.dim = k - 1;
  out.data.assign(static_cast<size_t>(k) * (k - 1), 0.0);
  // Recursive regular simplex: the first vector sits on the last axis, the
  // remaining k-1 are a scaled (k-1)-simplex with last coordinate -1/(k-1).
  std::vector<std::vector<double>> vecs{{1.0}, {-1.0}};
  for (int kk = 3; kk <= k; ++kk) {
    const int d = kk - 1;
    const double last = -1.0 / (kk - 1);
    const double scale = std::sqrt(1.0 - last * last);
    std::vector<std::vector<double>> next;
    next.push_back(std::vector<double>(d, 0.0));
    next.back()[d - 1] = 1.0;
    for (const auto& u : vecs) {
      std::vector<double> v(d, 0.0);
      for (int i = 0; i < d - 1; ++i) v[i] = scale * u[i];
      v[d - 1] = last;
      next.push_back(std::move(v));
    }
    vecs = std::move(next);
  }
  if (k == 2) vecs = {{1.0}, {-1.0}};
  for (int i = 0; i < k; ++i)
    for (int d = 0; d < out.dim; ++d)
      out.data[static_cast<size_t>(i) * out.dim + d] = vecs[i][d];
  return out;
}

std::vector<double> simplex_embedding(const Coloring& coloring) {
  const SimplexVectors sv = simplex_vectors(coloring.k);
  const int dim = sv.dim;
  std::vector<double> vecs(coloring.color.size() * dim);
  for (size_t v = 0; v < coloring.color.size(); ++v) {
    const auto row = sv.row(coloring.color[v]);
    std::copy(row.begin(), row.end(), vecs.begin() + v * dim);
  }
  return vecs;
}

namespace {

double dot(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double relaxation_objective(const DecompositionGraph& g, int k, double alpha,
                            double penalty_weight,
                            std::span<const double> vectors, int dim) {
  if (dim == 0) dim = k - 1;
  const double floor = -1.0 / (k - 1);
  double obj = 0.0;
  for (const auto& [u, v] : g.ce) {
    const double d = dot(&vectors[u * dim], &vectors[v * dim], dim);
    obj += d;
    const double h = std::max(0.0, floor - d);
    obj += penalty_weight * h * h;
  }
  for (const auto& [u, v] : g.se)
    obj -= alpha * dot(&vectors[u * dim], &vectors[v * dim], dim);
  return obj;
}

AffinityMatrix solve_relaxation(const DecompositionGraph& g, int k,
                                double alpha, const RelaxParams& params,
                                const Coloring* warm_start) {
  if (k < 2 || k > 16) throw std::invalid_argument("k must be in [2, 16]");
  if (params.iterations < 1 || params.restarts < 1)
    throw std::invalid_argument("iterations and restarts must be >= 1");
  const int n = g.n;
  int dim = params.rank;
  if (dim == 0) {
    const double m = static_cast<double>(g.ce.size() + g.se.size());
    dim = static_cast<int>(std::lround(std::ceil(std::sqrt(2.0 * m))));
    dim = std::clamp(dim, k - 1, 24);
  }
  dim = std::max(dim, k - 1);
  const double floor = -1.0 / (k - 1);
  const double lambda = params.penalty_weight;
  Adjacency adj(g);

  std::vector<double> best_vectors;
  double best_obj = 0.0;
  bool have_best = false;

  std::vector<double> vecs(static_cast<size_t>(n) * dim);
  std::vector<double> grad(dim), cand(dim);

  for (int restart = 0; restart < params.restarts; ++restart) {
    if (restart == 0 && warm_start) {
      // Embed in the leading k-1 coordinates, zero elsewhere.
      const std::vector<double> embedded = simplex_embedding(*warm_start);
      std::fill(vecs.begin(), vecs.end(), 0.0);
      for (int v = 0; v < n; ++v)
        for (int d = 0; d < k - 1; ++d)
          vecs[v * dim + d] = embedded[v * (k - 1) + d];
    } else {
      std::seed_seq seq{params.seed, static_cast<unsigned>(restart)};
      std::mt19937 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int v = 0; v < n; ++v) {
        double norm = 0.0;
        for (int d = 0; d < dim; ++d) {
          vecs[v * dim + d] = normal(rng);
          norm += vecs[v * dim + d] * vecs[v * dim + d];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
          std::fill_n(&vecs[v * dim], dim, 0.0);
          vecs[v * dim] = 1.0;
        } else {
          for (int d = 0; d < dim; ++d) vecs[v * dim + d] /= norm;
        }
      }
    }

    // Local objective of vertex v: all objective terms involving v.
    auto local = [&](int v, const double* vv) {
      double obj = 0.0;
      for (int u : adj.conflict[v]) {
        const double d = dot(vv, &vecs[u * dim], dim);
        const double h = std::max(0.0, floor - d);
        obj += d + lambda * h * h;
      }
      for (int u : adj.stitch[v]) obj -= alpha * dot(vv, &vecs[u * dim], dim);
      return obj;
    };

    double prev_obj = relaxation_objective(g, k, alpha, lambda, vecs, dim);
    int flat_sweeps = 0;
    for (int sweep = 0; sweep < params.iterations; ++sweep) {
      for (int v = 0; v < n; ++v) {
        if (adj.conflict[v].empty() && adj.stitch[v].empty()) continue;
        // Gradient of the local objective, frozen at the current point.
        std::fill(grad.begin(), grad.end(), 0.0);
        const double* vv = &vecs[v * dim];
        for (int u : adj.conflict[v]) {
          const double* uu = &vecs[u * dim];
          const double h = std::max(0.0, floor - dot(vv, uu, dim));
          for (int d = 0; d < dim; ++d)
            grad[d] += uu[d] - 2.0 * lambda * h * uu[d];
        }
        for (int u : adj.stitch[v]) {
          const double* uu = &vecs[u * dim];
          for (int d = 0; d < dim; ++d) grad[d] -= alpha * uu[d];
        }
        double norm = std::sqrt(dot(grad.data(), grad.data(), dim));
        if (norm < 1e-12) continue;
        for (int d = 0; d < dim; ++d) cand[d] = -grad[d] / norm;
        // Shrinking step search toward the candidate direction; accept the
        // best non-increasing point so every sweep stays monotone.
        const double base = local(v, vv);
        double best_obj = base;
        double best_theta = 0.0;
        for (double theta = 1.0; theta > 1e-3; theta *= 0.5) {
          double blended[32];
          double bnorm = 0.0;
          for (int d = 0; d < dim; ++d) {
            blended[d] = (1.0 - theta) * vv[d] + theta * cand[d];
            bnorm += blended[d] * blended[d];
          }
          bnorm = std::sqrt(bnorm);
          if (bnorm < 1e-12) continue;
          for (int d = 0; d < dim; ++d) blended[d] /= bnorm;
          const double obj = local(v, blended);
          if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best_theta = theta;
            break;
          }
        }
        if (best_theta > 0.0) {
          double bnorm = 0.0;
          for (int d = 0; d < dim; ++d) {
            cand[d] = (1.0 - best_theta) * vv[d] + best_theta * cand[d];
            bnorm += cand[d] * cand[d];
          }
          bnorm = std::sqrt(bnorm);
          for (int d = 0; d < dim; ++d) cand[d] /= bnorm;
          std::copy(cand.begin(), cand.end(), &vecs[v * dim]);
        }
      }
      const double obj = relaxation_objective(g, k, alpha, lambda, vecs, dim);
      if (obj > prev_obj + 1e-7)
        throw std::logic_error("relaxation objective rose within a sweep");
      if (prev_obj - obj < 1e-10) {
        if (++flat_sweeps >= 3) break;
      } else {
        flat_sweeps = 0;
      }
      prev_obj = obj;
    }

    const double obj = relaxation_objective(g, k, alpha, lambda, vecs, dim);
    if (!have_best || obj < best_obj) {
      have_best = true;
      best_obj = obj;
      best_vectors = vecs;
    }
  }

  AffinityMatrix x;
  x.n = n;
  x.x.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    x.x[static_cast<size_t>(i) * n + i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = dot(&best_vectors[i * dim], &best_vectors[j * dim], dim);
      x.x[static_cast<size_t>(i) * n + j] = d;
      x.x[static_cast<size_t>(j) * n + i] = d;
    }
  }
  return x;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the smaller id as root
    parent[b] = a;
    return true;
  }
};

}  // namespace

Coloring greedy_mapping(const AffinityMatrix& x, const DecompositionGraph& g,
                        int k, double alpha) {
  const int n = g.n;
  Coloring out;
  out.k = k;
  out.color.assign(n, 0);
  if (n == 0) return out;

  struct Pair {
    double aff;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({x.at(i, j), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.aff != b.aff) return a.aff > b.aff;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  std::vector<std::vector<char>> ce_mat(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.ce) ce_mat[u][v] = ce_mat[v][u] = 1;

  Dsu dsu(n);
  std::vector<std::vector<int>> members(n);
  for (int v = 0; v < n; ++v) members[v] = {v};
  int groups = n;
  for (const auto& p : pairs) {
    const int a = dsu.find(p.i), b = dsu.find(p.j);
    if (a == b) continue;
    bool clash = false;
    for (int u : members[a]) {
      for (int v : members[b])
        if (ce_mat[u][v]) {
          clash = true;
          break;
        }
      if (clash) break;
    }
    if (groups > k || !clash) {
      dsu.merge(a, b);
      const int root = dsu.find(a);
      const int other = root == a ? b : a;
      members[root].insert(members[root].end(), members[other].begin(),
                           members[other].end());
      members[other].clear();
      --groups;
    }
  }

  // Color groups by descending size, cheapest incremental color first.
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (dsu.find(v) == v) roots.push_back(v);
  std::sort(roots.begin(), roots.end(), [&](int a, int b) {
    return members[a].size() != members[b].size()
               ? members[a].size() > members[b].size()
               : a < b;
  });

  Adjacency adj(g);
  std::vector<int> color(n, -1);
  for (int root : roots) {
    int best = 0;
    double best_cost = 0.0;
    for (int c = 0; c < k; ++c) {
      double cost = 0.0;
      for (int v : members[root]) {
        for (int u : adj.conflict[v])
          if (color[u] == c) cost += 1.0;
        for (int u : adj.stitch[v])
          if (color[u] >= 0 && color[u] != c) cost += alpha;
      }
      if (c == 0 || cost < best_cost - 1e-12) {
        best = c;
        best_cost = cost;
      }
    }
    for (int v : members[root]) color[v] = best;
  }
  out.color = color;
  return out;
}

MergedGraph threshold_merge(const AffinityMatrix& x,
                            const DecompositionGraph& g, double t_th) {
  if (t_th <= 0.0 || t_th > 1.0)
    throw std::invalid_argument("t_th must be in (0, 1]");
  const int n = g.n;
  Dsu dsu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (x.at(i, j) >= t_th) dsu.merge(i, j);

  MergedGraph merged;
  merged.group_of.assign(n, -1);
  int groups = 0;
  for (int v = 0; v < n; ++v)
    if (dsu.find(v) == v) merged.group_of[v] = groups++;
  for (int v = 0; v < n; ++v) merged.group_of[v] = merged.group_of[dsu.find(v)];
  merged.graph.n = groups;

  std::map<Edge, int> ce_mult, se_mult;
  for (const auto& [u, v] : g.ce) {
    const int a = merged.group_of[u], b = merged.group_of[v];
    if (a == b)
      ++merged.forced_conflicts;
    else
      ++ce_mult[make_edge(a, b)];
  }
  for (const auto& [u, v] : g.se) {
    const int a = merged.group_of[u], b = merged.group_of[v];
    if (a != b) ++se_mult[make_edge(a, b)];
  }
  for (const auto& [e, w] : ce_mult) {
    merged.graph.ce.push_back(e);
    merged.ce_weight.push_back(w);
  }
  for (const auto& [e, w] : se_mult) {
    merged.graph.se.push_back(e);
    merged.se_weight.push_back(w);
  }
  return merged;
}

BacktrackResult backtrack_color(const MergedGraph& merged, int k, double alpha,
                                const SearchLimits& limits) {
  BacktrackResult result;
  Coloring group_colors;
  if (merged.graph.n <= limits.max_vertices) {
    const Coloring warm = linear_assign(merged.graph, k, alpha);
    const ExactResult exact = solve_exact_weighted(
        merged.graph, merged.ce_weight, merged.se_weight, k, alpha, limits,
        &warm);
    group_colors = exact.coloring;
    result.budget_exhausted = !exact.optimal;
  } else {
    group_colors = linear_assign(merged.graph, k, alpha);
    result.fell_back_to_linear = true;
  }
  result.coloring.k = k;
  result.coloring.color.resize(merged.group_of.size());
  for (size_t v = 0; v < merged.group_of.size(); ++v)
    result.coloring.color[v] = group_colors.color[merged.group_of[v]];
  return result;
}

}  // namespace mpld
