#include "mpld/linear.hpp"

#include <algorithm>
#include <cassert>

#include "mpld/division.hpp"

namespace mpld {

std::vector<int> OrderBuckets::concatenated() const {
  std::vector<int> order;
  order.reserve(vec1.size() + vec2.size() + vec3.size());
  order.insert(order.end(), vec1.begin(), vec1.end());
  order.insert(order.end(), vec2.begin(), vec2.end());
  order.insert(order.end(), vec3.begin(), vec3.end());
  return order;
}

OrderBuckets build_order_buckets(const DecompositionGraph& g,
                                 const Adjacency& adj, int k) {
  OrderBuckets buckets;
  const int hi = k + 2;
  for (int v = 0; v < g.n; ++v) {
    const int dc = static_cast<int>(adj.conflict[v].size());
    if (dc > hi)
      buckets.vec1.push_back(v);
    else if (dc > k)
      buckets.vec2.push_back(v);
    else
      buckets.vec3.push_back(v);
  }
  return buckets;
}

int min_cost_color(const Adjacency& adj, const std::vector<int>& colors, int v,
                   int k, double alpha) {
  if (k < 2 || k > 16) throw std::invalid_argument("k must be in [2, 16]");
  // Small fixed-size tallies; one pass over each neighbor list.
  int conf[16] = {0};
  int stit[16] = {0};
  int friendly[16] = {0};
  int colored_se = 0;
  for (int u : adj.conflict[v])
    if (colors[u] >= 0) ++conf[colors[u]];
  for (int u : adj.stitch[v])
    if (colors[u] >= 0) {
      ++stit[colors[u]];
      ++colored_se;
    }
  for (int u : adj.friendly[v])
    if (colors[u] >= 0) ++friendly[colors[u]];

  int best = 0;
  double best_cost = 0.0;
  for (int c = 0; c < k; ++c) {
    const double cost = conf[c] + alpha * (colored_se - stit[c]);
    if (c == 0) {
      best_cost = cost;
      continue;
    }
    if (cost < best_cost - 1e-12 ||
        (cost <= best_cost + 1e-12 && friendly[c] > friendly[best])) {
      best = c;
      best_cost = std::min(best_cost, cost);
    }
  }
  return best;
}

namespace {

Coloring color_in_order(const DecompositionGraph& g, const Adjacency& adj,
                        const std::vector<int>& order, int k, double alpha) {
  Coloring out;
  out.k = k;
  out.color.assign(g.n, -1);
  for (int v : order) out.color[v] = min_cost_color(adj, out.color, v, k, alpha);
  return out;
}

}  // namespace

Coloring sequence_coloring(const DecompositionGraph& g, const Adjacency& adj,
                           int k, double alpha) {
  std::vector<int> order(g.n);
  for (int v = 0; v < g.n; ++v) order[v] = v;
  return color_in_order(g, adj, order, k, alpha);
}

Coloring degree_coloring(const DecompositionGraph& g, const Adjacency& adj,
                         const OrderBuckets& buckets, int k, double alpha) {
  return color_in_order(g, adj, buckets.concatenated(), k, alpha);
}

Coloring three_round_coloring(const DecompositionGraph& g,
                              const Adjacency& adj, const OrderBuckets& buckets,
                              int k, double alpha) {
  const std::vector<int> order = buckets.concatenated();
  Coloring out;
  out.k = k;
  out.color.assign(g.n, -1);

  // Round 1: greedy until every color has appeared at least once. Ties
  // prefer a color not applied yet so the round can terminate.
  std::vector<char> used(k, 0);
  int used_count = 0;
  size_t round1_end = order.size();
  for (size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    int c = min_cost_color(adj, out.color, v, k, alpha);
    if (used[c]) {
      int conf[16] = {0};
      int stit[16] = {0};
      int se_deg = 0;
      for (int u : adj.conflict[v])
        if (out.color[u] >= 0) ++conf[out.color[u]];
      for (int u : adj.stitch[v])
        if (out.color[u] >= 0) {
          ++stit[out.color[u]];
          ++se_deg;
        }
      const double base = conf[c] + alpha * (se_deg - stit[c]);
      for (int alt = 0; alt < k; ++alt) {
        if (used[alt]) continue;
        const double cost = conf[alt] + alpha * (se_deg - stit[alt]);
        if (cost <= base + 1e-12) {
          c = alt;
          break;
        }
      }
    }
    out.color[v] = c;
    if (!used[c]) {
      used[c] = 1;
      ++used_count;
    }
    if (used_count == k) {
      round1_end = i + 1;
      break;
    }
  }

  // Round 2: vertices with exactly one conflict-free color get it now.
  for (size_t i = round1_end; i < order.size(); ++i) {
    const int v = order[i];
    if (out.color[v] >= 0) continue;
    int legal = -1, legal_count = 0;
    char blocked[16] = {0};
    for (int u : adj.conflict[v])
      if (out.color[u] >= 0) blocked[out.color[u]] = 1;
    for (int c = 0; c < k; ++c)
      if (!blocked[c]) {
        legal = c;
        ++legal_count;
      }
    if (legal_count == 1) out.color[v] = legal;
  }

  // Round 3: greedy on whatever is left.
  for (size_t i = round1_end; i < order.size(); ++i) {
    const int v = order[i];
    if (out.color[v] < 0)
      out.color[v] = min_cost_color(adj, out.color, v, k, alpha);
  }
  return out;
}

Coloring post_refinement(const DecompositionGraph& g, const Adjacency& adj,
                         const Coloring& coloring, double alpha,
                         bool to_fixpoint) {
  const int k = coloring.k;
  if (k < 2 || k > 16) throw std::invalid_argument("k must be in [2, 16]");
  Coloring out = coloring;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n; ++v) {
      int conf[16] = {0};
      int stit[16] = {0};
      int se_deg = 0;
      for (int u : adj.conflict[v]) ++conf[out.color[u]];
      for (int u : adj.stitch[v]) {
        ++stit[out.color[u]];
        ++se_deg;
      }
      const int cur = out.color[v];
      const double cur_cost = conf[cur] + alpha * (se_deg - stit[cur]);
      int best = cur;
      double best_cost = cur_cost;
      for (int c = 0; c < k; ++c) {
        const double cost = conf[c] + alpha * (se_deg - stit[c]);
        if (cost < best_cost - 1e-12) {
          best = c;
          best_cost = cost;
        }
      }
      if (best != cur) {
        out.color[v] = best;
        changed = true;
      }
    }
    if (!to_fixpoint) break;
  }
  return out;
}

Coloring linear_assign(const DecompositionGraph& g, int k, double alpha,
                       const LinearOptions& options) {
  if (k < 2 || k > 16) throw std::invalid_argument("k must be in [2, 16]");
  const PeelResult peel = peel_low_degree(g, k, options.literal_peel_rule);
  const DecompositionGraph& core = peel.reduced.graph;
  Adjacency core_adj(core);

  Coloring core_colors;
  core_colors.k = k;
  if (core.n > 0) {
    const OrderBuckets buckets = build_order_buckets(core, core_adj, k);
    const Coloring c1 = sequence_coloring(core, core_adj, k, alpha);
    const Coloring c2 = degree_coloring(core, core_adj, buckets, k, alpha);
    const Coloring c3 = three_round_coloring(core, core_adj, buckets, k, alpha);

    const CostReport r1 = evaluate_cost(core, c1, alpha);
    const CostReport r2 = evaluate_cost(core, c2, alpha);
    const CostReport r3 = evaluate_cost(core, c3, alpha);
    if (options.order_costs)
      *options.order_costs = {r1.weighted, r2.weighted, r3.weighted};

    const Coloring* pick = &c1;
    const CostReport* pick_cost = &r1;
    for (const auto& [cand, cost] :
         {std::pair{&c2, &r2}, std::pair{&c3, &r3}}) {
      if (cost->weighted < pick_cost->weighted - 1e-12 ||
          (cost->weighted <= pick_cost->weighted + 1e-12 &&
           cost->stitches < pick_cost->stitches)) {
        pick = cand;
        pick_cost = cost;
      }
    }
    core_colors = post_refinement(core, core_adj, *pick, alpha,
                                  options.refine_to_fixpoint);
  }

  std::vector<int> colors(g.n, -1);
  for (size_t i = 0; i < peel.reduced.to_parent.size(); ++i)
    colors[peel.reduced.to_parent[i]] = core_colors.color[i];
  reinsert_peeled(peel.stack, g, colors, k, alpha);

  Coloring out;
  out.k = k;
  out.color = std::move(colors);
  for (int c : out.color)
    if (c < 0 || c >= k) throw std::logic_error("incomplete linear coloring");
  return out;
}

}  // namespace mpld
