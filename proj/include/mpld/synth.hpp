#pragma once

#include "mpld/layout.hpp"

namespace mpld {

/// Synthetic wire-grid instances on 20 nm half-pitch geometry (20 nm wires,
/// 20 nm spacing, 40 nm row pitch). Horizontal segments are placed row by
/// row until the requested fill density is reached; a segment is split into
/// 2-3 abutting rects with probability stitch_rate. min_s follows the k
/// defaults: 80 nm for k = 4 (and below), 110 nm for k >= 5.
struct SynthParams {
  int n_polygons = 100;
  double density = 0.3;     // fraction of grid cells filled, in (0, 1]
  double stitch_rate = 0.2; // probability a polygon is pre-split
  int k = 4;
  unsigned seed = 1;
};

Layout generate_synthetic(const SynthParams& params);

}  // namespace mpld
