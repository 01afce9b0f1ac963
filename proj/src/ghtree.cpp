#include "mpld/ghtree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpld {

void FlowNetwork::add_arc_pair(int u, int v, std::int64_t cap_uv,
                               std::int64_t cap_vu) {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw std::invalid_argument("arc endpoint out of range");
  if (cap_uv < 0 || cap_vu < 0)
    throw std::invalid_argument("capacities must be >= 0");
  const int id = static_cast<int>(arc_to.size());
  arc_to.push_back(v);
  arc_cap.push_back(cap_uv);
  arc_to.push_back(u);
  arc_cap.push_back(cap_vu);
  out[u].push_back(id);
  out[v].push_back(id + 1);
}

namespace {

struct Dinic {
  const FlowNetwork& net;
  std::vector<std::int64_t> cap;  // scratch residual capacities
  std::vector<int> level;
  std::vector<size_t> iter;

  explicit Dinic(const FlowNetwork& n)
      : net(n), cap(n.arc_cap), level(n.n), iter(n.n) {}

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::vector<int> queue{s};
    level[s] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int a : net.out[v]) {
        const int w = net.arc_to[a];
        if (cap[a] > 0 && level[w] < 0) {
          level[w] = level[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (size_t& i = iter[v]; i < net.out[v].size(); ++i) {
      const int a = net.out[v][i];
      const int w = net.arc_to[a];
      if (cap[a] <= 0 || level[w] != level[v] + 1) continue;
      const std::int64_t d = dfs(w, t, std::min(limit, cap[a]));
      if (d > 0) {
        cap[a] -= d;
        cap[a ^ 1] += d;
        return d;
      }
    }
    return 0;
  }

  MaxFlowResult run(int s, int t) {
    MaxFlowResult result;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (true) {
        const std::int64_t d =
            dfs(s, t, std::numeric_limits<std::int64_t>::max());
        if (d == 0) break;
        result.value += d;
      }
    }
    result.source_side.assign(net.n, 0);
    std::vector<int> queue{s};
    result.source_side[s] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int a : net.out[v]) {
        const int w = net.arc_to[a];
        if (cap[a] > 0 && !result.source_side[w]) {
          result.source_side[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return result;
  }
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net, int s, int t) {
  if (s == t || s < 0 || t < 0 || s >= net.n || t >= net.n)
    throw std::invalid_argument("max_flow needs distinct valid s, t");
  Dinic dinic(net);
  return dinic.run(s, t);
}

FlowNetwork weighted_network(const DecompositionGraph& g,
                             double stitch_weight) {
  if (stitch_weight < 0) throw std::invalid_argument("stitch weight < 0");
  FlowNetwork net(g.n);
  const auto se_cap = std::llround(stitch_weight * kCapScale);
  for (const auto& [u, v] : g.ce) net.add_undirected(u, v, kCapScale);
  for (const auto& [u, v] : g.se) net.add_undirected(u, v, se_cap);
  return net;
}

GomoryHuTree build_gomory_hu(const FlowNetwork& net) {
  const int n = net.n;
  GomoryHuTree tree;
  tree.n = n;
  if (n <= 1) return tree;

  {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t head = 0; head < queue.size(); ++head)
      for (int a : net.out[queue[head]]) {
        const int w = net.arc_to[a];
        if ((net.arc_cap[a] > 0 || net.arc_cap[a ^ 1] > 0) && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw std::invalid_argument(
          "gomory-hu tree needs a connected network; split components first");
  }

  std::vector<int> parent(n, 0);
  std::vector<std::int64_t> weight(n, 0);
  for (int i = 1; i < n; ++i) {
    const MaxFlowResult mf = max_flow(net, i, parent[i]);
    weight[i] = mf.value;
    for (int j = i + 1; j < n; ++j)
      if (mf.source_side[j] && parent[j] == parent[i]) parent[j] = i;
  }
  for (int i = 1; i < n; ++i) tree.edges.push_back({i, parent[i], weight[i]});
  return tree;
}

int round_weight_tenths(std::int64_t tenths) {
  if (tenths >= 0) return static_cast<int>((tenths + kCapScale / 2) / kCapScale);
  return -static_cast<int>((-tenths + kCapScale / 2) / kCapScale);
}

RoundedTree refine_and_round(const GomoryHuTree& tree) {
  RoundedTree out;
  out.n = tree.n;
  out.edges.reserve(tree.edges.size());
  for (const auto& e : tree.edges)
    out.edges.push_back(
        {e.u, e.v, round_weight_tenths(e.flow_tenths), e.flow_tenths});
  return out;
}

namespace {

// Vertices on the `from` side of the tree once edge `skip` is removed.
std::vector<std::uint8_t> tree_side(const RoundedTree& tree, size_t skip,
                                    int from) {
  std::vector<std::vector<std::pair<int, size_t>>> adj(tree.n);
  for (size_t e = 0; e < tree.edges.size(); ++e) {
    adj[tree.edges[e].u].emplace_back(tree.edges[e].v, e);
    adj[tree.edges[e].v].emplace_back(tree.edges[e].u, e);
  }
  std::vector<std::uint8_t> side(tree.n, 0);
  std::vector<int> queue{from};
  side[from] = 1;
  for (size_t head = 0; head < queue.size(); ++head)
    for (const auto& [w, e] : adj[queue[head]])
      if (e != skip && !side[w]) {
        side[w] = 1;
        queue.push_back(w);
      }
  return side;
}

struct CrossCount {
  std::vector<Edge> ce, se;
};

CrossCount crossing_edges(const DecompositionGraph& g,
                          const std::vector<std::uint8_t>& side) {
  CrossCount out;
  for (const auto& e : g.ce)
    if (side[e.first] != side[e.second]) out.ce.push_back(e);
  for (const auto& e : g.se)
    if (side[e.first] != side[e.second]) out.se.push_back(e);
  return out;
}

int rounded_cut_weight(const CrossCount& cross, std::int64_t se_cap) {
  return round_weight_tenths(
      static_cast<std::int64_t>(cross.ce.size()) * kCapScale +
      static_cast<std::int64_t>(cross.se.size()) * se_cap);
}

}  // namespace

KCutPartition remove_kcuts(const RoundedTree& tree, const FlowNetwork& net,
                           const DecompositionGraph& g, int k,
                           double stitch_weight) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const auto se_cap = std::llround(stitch_weight * kCapScale);

  std::vector<char> removed(tree.edges.size(), 0);
  std::vector<CrossCount> removed_cross(tree.edges.size());
  for (size_t e = 0; e < tree.edges.size(); ++e) {
    if (tree.edges[e].weight >= k) continue;
    // Crossing edges from the flow bipartition that defined this tree edge.
    const MaxFlowResult mf = max_flow(net, tree.edges[e].u, tree.edges[e].v);
    CrossCount flow_cross = crossing_edges(g, mf.source_side);
    if (flow_cross.se.size() > 1) continue;  // 2-stitch cuts stay connected
    // The tree carries flow values, not cut structure; only drop the edge
    // when the true bipartition it induces is itself a small, rotatable cut.
    const auto side = tree_side(tree, e, tree.edges[e].u);
    const CrossCount tree_cross = crossing_edges(g, side);
    if (rounded_cut_weight(tree_cross, se_cap) >= k ||
        tree_cross.se.size() > 1)
      continue;
    removed[e] = 1;
    removed_cross[e] = std::move(flow_cross);
  }

  KCutPartition parts;
  parts.comp_of.assign(tree.n, -1);
  std::vector<std::vector<int>> adj(tree.n);
  for (size_t e = 0; e < tree.edges.size(); ++e) {
    if (removed[e]) continue;
    adj[tree.edges[e].u].push_back(tree.edges[e].v);
    adj[tree.edges[e].v].push_back(tree.edges[e].u);
  }
  int comp_count = 0;
  for (int s = 0; s < tree.n; ++s) {
    if (parts.comp_of[s] >= 0) continue;
    const int id = comp_count++;
    std::vector<int> queue{s};
    parts.comp_of[s] = id;
    for (size_t head = 0; head < queue.size(); ++head)
      for (int w : adj[queue[head]])
        if (parts.comp_of[w] < 0) {
          parts.comp_of[w] = id;
          queue.push_back(w);
        }
  }
  parts.comp_count = comp_count;

  for (size_t e = 0; e < tree.edges.size(); ++e) {
    if (!removed[e]) continue;
    CutRecord rec;
    rec.tree_u = tree.edges[e].u;
    rec.tree_v = tree.edges[e].v;
    rec.weight = tree.edges[e].weight;
    rec.comp_a = parts.comp_of[rec.tree_u];
    rec.comp_b = parts.comp_of[rec.tree_v];
    rec.crossing_ce = std::move(removed_cross[e].ce);
    rec.crossing_se = std::move(removed_cross[e].se);
    parts.cuts.push_back(std::move(rec));
  }
  return parts;
}

RotationMergeReport merge_with_rotation(const DecompositionGraph& g,
                                        const KCutPartition& parts,
                                        std::vector<int>& colors, int k) {
  const int m = parts.comp_count;
  RotationMergeReport report;
  report.rotation_of_comp.assign(m, 0);
  if (m <= 1) return report;

  std::vector<std::vector<int>> comp_adj(m);
  for (const auto& cut : parts.cuts) {
    comp_adj[cut.comp_a].push_back(cut.comp_b);
    comp_adj[cut.comp_b].push_back(cut.comp_a);
  }
  for (auto& list : comp_adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  std::vector<int> comp_size(m, 0);
  for (int c : parts.comp_of) ++comp_size[c];
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return comp_size[a] != comp_size[b] ? comp_size[a] > comp_size[b] : a < b;
  });

  std::vector<char> attached_comp(m, 0);
  std::vector<char> attached_vertex(g.n, 0);
  auto attach = [&](int comp, int rotation) {
    report.rotation_of_comp[comp] = rotation;
    for (int v = 0; v < g.n; ++v)
      if (parts.comp_of[v] == comp) {
        colors[v] = (colors[v] + rotation) % k;
        attached_vertex[v] = 1;
      }
    attached_comp[comp] = 1;
  };

  std::vector<int> stack;
  for (int root : order) {
    if (attached_comp[root]) continue;
    attach(root, 0);
    stack.push_back(root);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (int next : comp_adj[c]) {
        if (attached_comp[next]) continue;
        // Evaluate all k rotations of `next` against everything attached.
        std::vector<long long> conf(k, 0), stitch(k, 0);
        for (const auto& [u, v] : g.ce) {
          int a = u, b = v;
          if (parts.comp_of[b] == next && attached_vertex[a]) std::swap(a, b);
          if (parts.comp_of[a] != next || !attached_vertex[b]) continue;
          for (int r = 0; r < k; ++r)
            if ((colors[a] + r) % k == colors[b]) ++conf[r];
        }
        for (const auto& [u, v] : g.se) {
          int a = u, b = v;
          if (parts.comp_of[b] == next && attached_vertex[a]) std::swap(a, b);
          if (parts.comp_of[a] != next || !attached_vertex[b]) continue;
          for (int r = 0; r < k; ++r)
            if ((colors[a] + r) % k != colors[b]) ++stitch[r];
        }
        int best = 0;
        for (int r = 1; r < k; ++r) {
          if (conf[r] < conf[best] ||
              (conf[r] == conf[best] && stitch[r] < stitch[best]))
            best = r;
        }
        report.crossing_conflicts += conf[best];
        report.crossing_stitches += stitch[best];
        attach(next, best);
        stack.push_back(next);
      }
    }
  }
  return report;
}

}  // namespace mpld
