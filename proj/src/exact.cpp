#include "mpld/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mpld {

namespace {

constexpr double kEps = 1e-9;

struct Nbr {
  int v;
  int w;
};

struct Searcher {
  int n, k;
  double alpha;
  std::vector<std::vector<Nbr>> ce_adj, se_adj;
  std::vector<int> order;  // position -> vertex, descending conflict weight

  std::vector<int> col;
  std::vector<std::vector<int>> cnt;   // cnt[v][c]: CE weight to colored nbrs of color c
  std::vector<std::vector<int>> scnt;  // scnt[v][c]: SE weight likewise
  std::vector<int> colored_sdeg;       // total SE weight to colored nbrs
  std::vector<double> lb;
  double lb_sum = 0.0, partial = 0.0;
  double best_cost = 0.0;
  std::vector<int> best_col;

  std::uint64_t nodes = 0, max_nodes = 0;
  std::chrono::steady_clock::time_point deadline;
  bool stopped = false;

  Searcher(const DecompositionGraph& g, std::span<const int> ce_w,
           std::span<const int> se_w, int k_, double alpha_)
      : n(g.n), k(k_), alpha(alpha_), ce_adj(g.n), se_adj(g.n) {
    for (size_t e = 0; e < g.ce.size(); ++e) {
      const auto& [u, v] = g.ce[e];
      ce_adj[u].push_back({v, ce_w[e]});
      ce_adj[v].push_back({u, ce_w[e]});
    }
    for (size_t e = 0; e < g.se.size(); ++e) {
      const auto& [u, v] = g.se[e];
      se_adj[u].push_back({v, se_w[e]});
      se_adj[v].push_back({u, se_w[e]});
    }
    order.resize(n);
    std::vector<long long> cdeg(n, 0);
    for (int v = 0; v < n; ++v)
      for (const auto& nb : ce_adj[v]) cdeg[v] += nb.w;
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return cdeg[a] != cdeg[b] ? cdeg[a] > cdeg[b] : a < b;
    });

    col.assign(n, -1);
    cnt.assign(n, std::vector<int>(k, 0));
    scnt.assign(n, std::vector<int>(k, 0));
    colored_sdeg.assign(n, 0);
    lb.assign(n, 0.0);
  }

  double assignment_delta(int v, int c) const {
    return cnt[v][c] + alpha * (colored_sdeg[v] - scnt[v][c]);
  }

  double vertex_bound(int v) const {
    double best = assignment_delta(v, 0);
    for (int c = 1; c < k; ++c) best = std::min(best, assignment_delta(v, c));
    return best;
  }

  void refresh_bound(int v) {
    const double fresh = vertex_bound(v);
    lb_sum += fresh - lb[v];
    lb[v] = fresh;
  }

  double coloring_cost(std::span<const int> colors) const {
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
      for (const auto& nb : ce_adj[v])
        if (nb.v > v && colors[v] == colors[nb.v]) total += nb.w;
      for (const auto& nb : se_adj[v])
        if (nb.v > v && colors[v] != colors[nb.v]) total += alpha * nb.w;
    }
    return total;
  }

  // Sequential min-cost coloring in search order; the starting incumbent.
  std::vector<int> greedy() const {
    std::vector<int> colors(n, -1);
    for (int pos = 0; pos < n; ++pos) {
      const int v = order[pos];
      int best = 0;
      double best_cost_c = 0.0;
      for (int c = 0; c < k; ++c) {
        double cost = 0.0;
        for (const auto& nb : ce_adj[v])
          if (colors[nb.v] == c) cost += nb.w;
        for (const auto& nb : se_adj[v])
          if (colors[nb.v] >= 0 && colors[nb.v] != c) cost += alpha * nb.w;
        if (c == 0 || cost < best_cost_c - kEps) {
          best = c;
          best_cost_c = cost;
        }
      }
      colors[v] = best;
    }
    return colors;
  }

  void dfs(int pos, int max_used) {
    if (stopped) return;
    if (++nodes > max_nodes) {
      stopped = true;
      return;
    }
    if ((nodes & 0x1fff) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      stopped = true;
      return;
    }
    if (pos == n) {
      if (partial < best_cost - kEps) {
        best_cost = partial;
        best_col = col;
      }
      return;
    }
    const int v = order[pos];
    lb_sum -= lb[v];
    const int cmax = std::min(max_used + 1, k - 1);
    for (int c = 0; c <= cmax; ++c) {
      const double delta = assignment_delta(v, c);
      if (partial + delta + lb_sum >= best_cost - kEps) continue;
      col[v] = c;
      partial += delta;
      for (const auto& nb : ce_adj[v])
        if (col[nb.v] < 0) {
          cnt[nb.v][c] += nb.w;
          refresh_bound(nb.v);
        }
      for (const auto& nb : se_adj[v])
        if (col[nb.v] < 0) {
          scnt[nb.v][c] += nb.w;
          colored_sdeg[nb.v] += nb.w;
          refresh_bound(nb.v);
        }
      dfs(pos + 1, std::max(max_used, c));
      for (const auto& nb : ce_adj[v])
        if (col[nb.v] < 0) {
          cnt[nb.v][c] -= nb.w;
          refresh_bound(nb.v);
        }
      for (const auto& nb : se_adj[v])
        if (col[nb.v] < 0) {
          scnt[nb.v][c] -= nb.w;
          colored_sdeg[nb.v] -= nb.w;
          refresh_bound(nb.v);
        }
      partial -= delta;
      col[v] = -1;
      if (stopped) break;
    }
    lb_sum += lb[v];
  }
};

}  // namespace

ExactResult solve_exact_weighted(const DecompositionGraph& g,
                                 std::span<const int> ce_weight,
                                 std::span<const int> se_weight, int k,
                                 double alpha, const SearchLimits& limits,
                                 const Coloring* warm_start) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (g.n > limits.max_vertices)
    throw SizeLimitError("component of " + std::to_string(g.n) +
                         " vertices exceeds the exact-search limit of " +
                         std::to_string(limits.max_vertices));

  Searcher s(g, ce_weight, se_weight, k, alpha);
  s.max_nodes = limits.max_nodes;
  s.deadline = std::chrono::steady_clock::now() +
               std::chrono::milliseconds(limits.time_budget_ms);

  s.best_col = s.greedy();
  s.best_cost = s.coloring_cost(s.best_col);
  if (warm_start && static_cast<int>(warm_start->color.size()) == g.n) {
    const double warm_cost = s.coloring_cost(warm_start->color);
    if (warm_cost < s.best_cost - kEps) {
      s.best_cost = warm_cost;
      s.best_col = warm_start->color;
    }
  }

  if (g.n > 0) s.dfs(0, -1);

  ExactResult result;
  result.coloring.k = k;
  result.coloring.color = s.best_col;
  result.optimal = !s.stopped;
  result.nodes = s.nodes;

  long long conflicts = 0, stitches = 0;
  for (size_t e = 0; e < g.ce.size(); ++e)
    if (s.best_col[g.ce[e].first] == s.best_col[g.ce[e].second])
      conflicts += ce_weight[e];
  for (size_t e = 0; e < g.se.size(); ++e)
    if (s.best_col[g.se[e].first] != s.best_col[g.se[e].second])
      stitches += se_weight[e];
  result.cost.conflicts = conflicts;
  result.cost.stitches = stitches;
  result.cost.alpha = alpha;
  result.cost.weighted =
      static_cast<double>(conflicts) + alpha * static_cast<double>(stitches);
  return result;
}

ExactResult solve_exact(const DecompositionGraph& g, int k, double alpha,
                        const SearchLimits& limits,
                        const Coloring* warm_start) {
  const std::vector<int> ce_w(g.ce.size(), 1), se_w(g.se.size(), 1);
  return solve_exact_weighted(g, ce_w, se_w, k, alpha, limits, warm_start);
}

}  // namespace mpld
