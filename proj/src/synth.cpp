#include "mpld/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mpld {

namespace {

constexpr long long kWireWidth = 20;   // w_m
constexpr long long kWireSpace = 20;   // s_m
constexpr long long kPitch = kWireWidth + kWireSpace;

}  // namespace

Layout generate_synthetic(const SynthParams& p) {
  if (p.n_polygons <= 0) throw std::invalid_argument("n_polygons must be > 0");
  if (p.density <= 0.0 || p.density > 1.0)
    throw std::invalid_argument("density must be in (0, 1]");
  if (p.stitch_rate < 0.0 || p.stitch_rate > 1.0)
    throw std::invalid_argument("stitch_rate must be in [0, 1]");
  if (p.k < 2 || p.k > 16) throw std::invalid_argument("k must be in [2, 16]");

  Layout layout;
  layout.min_s = p.k >= 5 ? 110 : 80;
  layout.hp = static_cast<int>(kWireWidth);

  // Grid sized so that expected segment count at the target density matches
  // the polygon budget (average segment length ~2.5 cells).
  const double cells_needed = p.n_polygons * 2.5 / p.density;
  const int cols = std::max(6, static_cast<int>(std::lround(
                                   std::sqrt(cells_needed * 2.0))));
  const int rows =
      std::max(3, static_cast<int>(std::lround(cells_needed / cols)));

  std::mt19937 rng(p.seed);
  std::uniform_int_distribution<int> pick_row(0, rows - 1);
  std::uniform_int_distribution<int> pick_col(0, cols - 1);
  std::uniform_int_distribution<int> pick_len(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<char>> occupied(rows, std::vector<char>(cols, 0));
  int placed = 0;
  const int max_attempts = p.n_polygons * 200;
  for (int attempt = 0; attempt < max_attempts && placed < p.n_polygons;
       ++attempt) {
    const int row = pick_row(rng);
    const int col = pick_col(rng);
    const int len = std::min(pick_len(rng), cols - col);
    if (len < 1) continue;
    bool free = true;
    for (int c = col; c < col + len; ++c)
      if (occupied[row][c]) {
        free = false;
        break;
      }
    if (!free) continue;
    for (int c = col; c < col + len; ++c) occupied[row][c] = 1;

    const long long y1 = static_cast<long long>(row) * kPitch;
    const long long x1 = static_cast<long long>(col) * kPitch;
    const long long x2 = x1 + len * kPitch - kWireSpace;

    int pieces = 1;
    if (len >= 2 && unit(rng) < p.stitch_rate)
      pieces = (len >= 3 && unit(rng) < 0.5) ? 3 : 2;
    // Split on interior pitch boundaries so the pieces abut exactly.
    std::vector<long long> bounds{x1};
    for (int piece = 1; piece < pieces; ++piece)
      bounds.push_back(x1 + kPitch * std::max(1, piece * len / pieces));
    bounds.push_back(x2);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    for (size_t b = 0; b + 1 < bounds.size(); ++b)
      layout.rects.push_back(
          {placed, bounds[b], y1, bounds[b + 1], y1 + kWireWidth});
    ++placed;
  }
  if (placed < p.n_polygons)
    throw std::runtime_error("could not place all polygons at density " +
                             std::to_string(p.density));
  return layout;
}

}  // namespace mpld
