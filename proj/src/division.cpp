#include "mpld/division.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mpld {

Subgraph induce_subgraph(const DecompositionGraph& g,
                         std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  std::vector<int> local(g.n, -1);
  for (size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);

  Subgraph sub;
  sub.graph.n = static_cast<int>(vertices.size());
  sub.to_parent = std::move(vertices);
  auto project = [&](const std::vector<Edge>& edges, std::vector<Edge>& out) {
    for (const auto& [u, v] : edges)
      if (local[u] >= 0 && local[v] >= 0)
        out.push_back(make_edge(local[u], local[v]));
  };
  project(g.ce, sub.graph.ce);
  project(g.se, sub.graph.se);
  project(g.fe, sub.graph.fe);
  sub.graph.canonicalize();
  return sub;
}

std::vector<Subgraph> independent_components(const DecompositionGraph& g) {
  Adjacency adj(g);
  std::vector<int> comp(g.n, -1);
  std::vector<Subgraph> out;
  std::vector<int> stack;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members;
    stack.push_back(s);
    comp[s] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (const auto* list : {&adj.conflict[v], &adj.stitch[v]}) {
        for (int w : *list) {
          if (comp[w] < 0) {
            comp[w] = id;
            stack.push_back(w);
          }
        }
      }
    }
    out.push_back(induce_subgraph(g, std::move(members)));
  }
  return out;
}

PeelResult peel_low_degree(const DecompositionGraph& g, int k,
                           bool literal_total_degree_rule) {
  Adjacency adj(g);
  std::vector<int> dc(g.n, 0), ds(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    dc[v] = static_cast<int>(adj.conflict[v].size());
    ds[v] = static_cast<int>(adj.stitch[v].size());
  }
  auto removable = [&](int v) {
    if (literal_total_degree_rule) return dc[v] + ds[v] < k;
    return dc[v] < k && ds[v] < 2;
  };

  std::vector<char> alive(g.n, 1);
  std::vector<int> queue;
  for (int v = 0; v < g.n; ++v)
    if (removable(v)) queue.push_back(v);

  PeelResult result;
  size_t head = 0;
  while (head < queue.size()) {
    const int v = queue[head++];
    if (!alive[v] || !removable(v)) continue;
    alive[v] = 0;
    result.stack.push_back({v, dc[v], ds[v]});
    for (int w : adj.conflict[v]) {
      if (!alive[w]) continue;
      --dc[w];
      if (removable(w)) queue.push_back(w);
    }
    for (int w : adj.stitch[v]) {
      if (!alive[w]) continue;
      --ds[w];
      if (removable(w)) queue.push_back(w);
    }
  }

  std::vector<int> kept;
  for (int v = 0; v < g.n; ++v)
    if (alive[v]) kept.push_back(v);
  result.reduced = induce_subgraph(g, std::move(kept));
  return result;
}

void reinsert_peeled(std::span<const PeelEntry> stack,
                     const DecompositionGraph& g, std::vector<int>& colors,
                     int k, double alpha) {
  Adjacency adj(g);
  std::vector<char> used(k, 0);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const int v = it->vertex;
    std::fill(used.begin(), used.end(), 0);
    for (int w : adj.conflict[v])
      if (colors[w] >= 0) used[colors[w]] = 1;

    int best = -1;
    double best_stitch = 0.0;
    for (int c = 0; c < k; ++c) {
      if (used[c]) continue;
      int diff = 0;
      for (int w : adj.stitch[v])
        if (colors[w] >= 0 && colors[w] != c) ++diff;
      const double cost = alpha * diff;
      if (best < 0 || cost < best_stitch) {
        best = c;
        best_stitch = cost;
      }
    }
    if (best < 0)
      throw std::logic_error("no conflict-free color for peeled vertex");
    colors[v] = best;
  }
}

BccSplit biconnected_split(const DecompositionGraph& g) {
  // Union edge list; CE and SE are disjoint by invariant.
  std::vector<Edge> edges = g.ce;
  edges.insert(edges.end(), g.se.begin(), g.se.end());
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, edge id)
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, static_cast<int>(e));
    adj[edges[e].second].emplace_back(edges[e].first, static_cast<int>(e));
  }

  std::vector<int> disc(g.n, -1), low(g.n, 0), parent_edge(g.n, -1);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> bcc_edges;
  int timer = 0;

  struct Frame {
    int v;
    size_t next;
  };
  std::vector<Frame> frames;
  for (int root = 0; root < g.n; ++root) {
    if (disc[root] >= 0) continue;
    frames.push_back({root, 0});
    disc[root] = low[root] = timer++;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const int v = f.v;
      if (f.next < adj[v].size()) {
        const auto [w, eid] = adj[v][f.next++];
        if (disc[w] < 0) {
          edge_stack.push_back(eid);
          parent_edge[w] = eid;
          disc[w] = low[w] = timer++;
          frames.push_back({w, 0});
        } else if (eid != parent_edge[v] && disc[w] < disc[v]) {
          edge_stack.push_back(eid);
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        frames.pop_back();
        if (frames.empty()) continue;
        const int p = frames.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
          // Edges down to and including (p, v) form one biconnected component.
          std::vector<int> comp;
          while (!edge_stack.empty()) {
            const int eid = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(eid);
            if (eid == parent_edge[v]) break;
          }
          bcc_edges.push_back(std::move(comp));
        }
      }
    }
  }

  BccSplit split;
  std::vector<int> seen(g.n, -1);
  for (const auto& comp : bcc_edges) {
    std::vector<int> members;
    const int id = static_cast<int>(split.components.size());
    for (int eid : comp) {
      for (int v : {edges[eid].first, edges[eid].second}) {
        if (seen[v] != id) {
          seen[v] = id;
          members.push_back(v);
        }
      }
    }
    split.components.push_back(induce_subgraph(g, std::move(members)));
  }
  // Isolated vertices get singleton components of their own.
  std::vector<char> covered(g.n, 0);
  for (const auto& sub : split.components)
    for (int v : sub.to_parent) covered[v] = 1;
  for (int v = 0; v < g.n; ++v)
    if (!covered[v]) split.components.push_back(induce_subgraph(g, {v}));

  std::vector<std::vector<int>> incident(g.n);
  for (size_t c = 0; c < split.components.size(); ++c)
    for (int v : split.components[c].to_parent)
      incident[v].push_back(static_cast<int>(c));
  for (int v = 0; v < g.n; ++v)
    for (size_t i = 1; i < incident[v].size(); ++i)
      split.links.push_back({v, incident[v][i - 1], incident[v][i]});
  return split;
}

Coloring merge_at_articulations(const BccSplit& split,
                                std::span<const Coloring> comp_colorings,
                                int parent_vertex_count, int k) {
  assert(comp_colorings.size() == split.components.size());
  const int m = static_cast<int>(split.components.size());

  std::vector<std::vector<std::pair<int, int>>> comp_adj(m);  // (other, vertex)
  for (const auto& link : split.links) {
    comp_adj[link.comp_a].emplace_back(link.comp_b, link.vertex);
    comp_adj[link.comp_b].emplace_back(link.comp_a, link.vertex);
  }
  for (auto& list : comp_adj) std::sort(list.begin(), list.end());

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto sa = split.components[a].to_parent.size();
    const auto sb = split.components[b].to_parent.size();
    return sa != sb ? sa > sb : a < b;
  });

  Coloring merged;
  merged.k = k;
  merged.color.assign(parent_vertex_count, 0);
  std::vector<char> fixed(parent_vertex_count, 0);
  std::vector<char> done(m, 0);

  auto place = [&](int c, int rotation) {
    const Subgraph& sub = split.components[c];
    for (size_t i = 0; i < sub.to_parent.size(); ++i) {
      const int pv = sub.to_parent[i];
      const int col = (comp_colorings[c].color[i] + rotation) % k;
      if (fixed[pv]) {
        if (merged.color[pv] != col)
          throw std::logic_error("articulation colors disagree after rotation");
      } else {
        merged.color[pv] = col;
        fixed[pv] = 1;
      }
    }
    done[c] = 1;
  };

  std::vector<std::pair<int, int>> stack;  // (comp, via parent vertex or -1)
  for (int root : order) {
    if (done[root]) continue;
    stack.emplace_back(root, -1);
    while (!stack.empty()) {
      const auto [c, via] = stack.back();
      stack.pop_back();
      if (done[c]) continue;
      int rotation = 0;
      if (via >= 0) {
        const Subgraph& sub = split.components[c];
        const auto it = std::find(sub.to_parent.begin(), sub.to_parent.end(), via);
        assert(it != sub.to_parent.end());
        const int local = static_cast<int>(it - sub.to_parent.begin());
        const int want = merged.color[via];
        const int have = comp_colorings[c].color[local];
        rotation = ((want - have) % k + k) % k;
      }
      place(c, rotation);
      for (auto rit = comp_adj[c].rbegin(); rit != comp_adj[c].rend(); ++rit)
        if (!done[rit->first]) stack.emplace_back(rit->first, rit->second);
    }
  }
  return merged;
}

}  // namespace mpld
