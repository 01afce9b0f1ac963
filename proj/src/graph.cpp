#include "mpld/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpld {

void DecompositionGraph::canonicalize() {
  auto tidy = [](std::vector<Edge>& edges) {
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  };
  tidy(ce);
  tidy(se);
  tidy(fe);
}

bool DecompositionGraph::has_conflict_edge(int u, int v) const {
  const Edge e = make_edge(u, v);
  return std::find(ce.begin(), ce.end(), e) != ce.end();
}

Adjacency::Adjacency(const DecompositionGraph& g)
    : conflict(g.n), stitch(g.n), friendly(g.n) {
  for (const auto& [u, v] : g.ce) {
    conflict[u].push_back(v);
    conflict[v].push_back(u);
  }
  for (const auto& [u, v] : g.se) {
    stitch[u].push_back(v);
    stitch[v].push_back(u);
  }
  for (const auto& [u, v] : g.fe) {
    friendly[u].push_back(v);
    friendly[v].push_back(u);
  }
}

CostReport evaluate_cost(const DecompositionGraph& g, const Coloring& c,
                         double alpha) {
  if (static_cast<int>(c.color.size()) != g.n)
    throw std::invalid_argument("coloring length does not match vertex count");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  CostReport r;
  r.alpha = alpha;
  for (const auto& [u, v] : g.ce)
    if (c.color[u] == c.color[v]) ++r.conflicts;
  for (const auto& [u, v] : g.se)
    if (c.color[u] != c.color[v]) ++r.stitches;
  r.weighted = static_cast<double>(r.conflicts) +
               alpha * static_cast<double>(r.stitches);
  return r;
}

Coloring rotate_colors(const Coloring& c, std::span<const int> vertices,
                       int i) {
  if (i < 0 || i >= c.k) throw std::invalid_argument("rotation out of range");
  Coloring out = c;
  for (int v : vertices) out.color[v] = (c.color[v] + i) % c.k;
  return out;
}

std::pair<int, int> degrees(const DecompositionGraph& g, int v) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("invalid vertex id");
  int dc = 0, ds = 0;
  for (const auto& [a, b] : g.ce)
    if (a == v || b == v) ++dc;
  for (const auto& [a, b] : g.se)
    if (a == v || b == v) ++ds;
  return {dc, ds};
}

namespace {

void check_edge_list(const std::vector<Edge>& edges, int n, const char* name,
                     std::vector<std::string>& out) {
  for (const auto& [u, v] : edges) {
    if (u == v)
      out.push_back(std::string(name) + " self-loop at vertex " +
                    std::to_string(u));
    if (u < 0 || u >= n || v < 0 || v >= n)
      out.push_back(std::string(name) + " edge (" + std::to_string(u) + "," +
                    std::to_string(v) + ") references unknown vertex");
  }
  auto sorted = edges;
  for (auto& e : sorted) e = make_edge(e.first, e.second);
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      out.push_back(std::string(name) + " duplicate edge (" +
                    std::to_string(sorted[i].first) + "," +
                    std::to_string(sorted[i].second) + ")");
}

}  // namespace

std::vector<std::string> validate(const DecompositionGraph& g) {
  std::vector<std::string> out;
  check_edge_list(g.ce, g.n, "ce", out);
  check_edge_list(g.se, g.n, "se", out);
  check_edge_list(g.fe, g.n, "fe", out);

  auto canon = [](std::vector<Edge> edges) {
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    return edges;
  };
  const auto ce = canon(g.ce), se = canon(g.se);
  std::vector<Edge> overlap;
  std::set_intersection(ce.begin(), ce.end(), se.begin(), se.end(),
                        std::back_inserter(overlap));
  for (const auto& [u, v] : overlap)
    out.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") present in both ce and se");
  return out;
}

}  // namespace mpld
