#include "mpld/fm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

namespace mpld {

double compute_gain(const Adjacency& adj, const Coloring& coloring, int v,
                    int to_color, double alpha) {
  const int from = coloring.color[v];
  long long conf_delta = 0;  // conflicts removed minus conflicts added
  long long stit_delta = 0;
  for (int u : adj.conflict[v]) {
    if (coloring.color[u] == from) ++conf_delta;
    if (coloring.color[u] == to_color) --conf_delta;
  }
  for (int u : adj.stitch[v]) {
    if (coloring.color[u] != from) ++stit_delta;
    if (coloring.color[u] != to_color) --stit_delta;
  }
  return static_cast<double>(conf_delta) +
         alpha * static_cast<double>(stit_delta);
}

namespace {

// Same move valued on the max-cut framing (CE weight 1, SE weight -alpha,
// maximize cut): must agree with the min-cost gain at every step.
double cut_gain(const Adjacency& adj, const std::vector<int>& colors, int v,
                int from, int to, double alpha) {
  double before = 0.0, after = 0.0;
  for (int u : adj.conflict[v]) {
    before += colors[u] != from ? 1.0 : 0.0;
    after += colors[u] != to ? 1.0 : 0.0;
  }
  for (int u : adj.stitch[v]) {
    before -= colors[u] != from ? alpha : 0.0;
    after -= colors[u] != to ? alpha : 0.0;
  }
  return after - before;
}

struct HeapEntry {
  double gain;
  int v;
  int c;
  unsigned version;
};

struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    if (a.v != b.v) return a.v > b.v;
    return a.c > b.c;
  }
};

struct Move {
  int v;
  int from, to;
  double gain;
};

}  // namespace

Coloring fm_color(const DecompositionGraph& g, int k, double alpha,
                  unsigned seed, int max_passes) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
  Adjacency adj(g);

  Coloring coloring;
  coloring.k = k;
  coloring.color.resize(g.n);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int v = 0; v < g.n; ++v) coloring.color[v] = pick(rng);
  if (g.n == 0) return coloring;

  std::vector<unsigned> version(g.n, 0);
  std::vector<char> locked(g.n, 0);

  for (int pass = 0; pass < max_passes; ++pass) {
    std::fill(locked.begin(), locked.end(), 0);
    std::fill(version.begin(), version.end(), 0);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
    auto push_moves = [&](int v) {
      for (int c = 0; c < k; ++c) {
        if (c == coloring.color[v]) continue;
        heap.push({compute_gain(adj, coloring, v, c, alpha), v, c, version[v]});
      }
    };
    for (int v = 0; v < g.n; ++v) push_moves(v);

    std::vector<Move> moves;
    moves.reserve(g.n);
    double cumulative = 0.0;
    double best_prefix_gain = 0.0;
    size_t best_prefix = 0;

    int remaining = g.n;
    while (remaining > 0) {
      if (heap.empty()) throw std::logic_error("fm move heap drained early");
      HeapEntry top = heap.top();
      heap.pop();
      if (locked[top.v] || top.version != version[top.v] ||
          top.c == coloring.color[top.v])
        continue;
      // The min-cost gain and the max-cut framing must agree on every move.
      if (std::abs(cut_gain(adj, coloring.color, top.v, coloring.color[top.v],
                            top.c, alpha) -
                   top.gain) > 1e-9)
        throw std::logic_error("fm gain framings disagree");
      const int from = coloring.color[top.v];
      coloring.color[top.v] = top.c;
      locked[top.v] = 1;
      --remaining;
      moves.push_back({top.v, from, top.c, top.gain});
      cumulative += top.gain;
      if (cumulative > best_prefix_gain + 1e-12) {
        best_prefix_gain = cumulative;
        best_prefix = moves.size();
      }
      for (int u : adj.conflict[top.v])
        if (!locked[u]) {
          ++version[u];
          push_moves(u);
        }
      for (int u : adj.stitch[top.v])
        if (!locked[u]) {
          ++version[u];
          push_moves(u);
        }
    }

    // Keep the best prefix of the pass; undo everything after it.
    for (size_t i = moves.size(); i > best_prefix; --i)
      coloring.color[moves[i - 1].v] = moves[i - 1].from;
    if (best_prefix_gain <= 1e-12) break;
  }
  return coloring;
}

}  // namespace mpld
