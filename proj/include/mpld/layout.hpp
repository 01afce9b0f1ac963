#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpld/graph.hpp"

namespace mpld {

/// Axis-aligned rectangle in integer nm, x1 < x2 and y1 < y2. Polygons are
/// supplied pre-split into abutting rectangles sharing a polygon_id; each
/// rectangle becomes one graph vertex.
struct Rect {
  int polygon_id = 0;
  long long x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

struct Layout {
  std::vector<Rect> rects;
  int min_s = 80;  // minimum coloring distance, nm
  int hp = 20;     // half pitch, nm
};

enum class DistanceMetric { euclidean, rectilinear };

/// Parse failure with the offending 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Distance between two closed rectangles (0 if they touch or overlap).
double rect_gap(const Rect& a, const Rect& b,
                DistanceMetric metric = DistanceMetric::euclidean);

/// Build the decomposition graph from geometry: CE between rects of different
/// polygons closer than min_s, SE between abutting rects of the same polygon,
/// FE between different polygons in the (min_s, min_s + hp) band. Distance
/// tests use exact integer arithmetic; a uniform grid keeps the pair scan
/// near-linear. Overlapping rects of different polygons are reported through
/// `warnings` (if non-null) and still processed.
DecompositionGraph build_graph(const Layout& layout,
                               DistanceMetric metric = DistanceMetric::euclidean,
                               bool with_friendly = true,
                               std::vector<std::string>* warnings = nullptr);

/// A parsed .dg file: dense graph plus the original vertex ids in dense order.
struct GraphFile {
  DecompositionGraph graph;
  std::vector<long long> vertex_ids;  // dense id -> id from the file
  int k_hint = 0;                     // `param k`, 0 when absent
};

GraphFile parse_graph_file(std::string_view text);

/// Canonical .dg text: header, optional param, `v` lines ascending by
/// original id, then ce/se/fe lines sorted. parse -> serialize is a fixpoint.
std::string serialize_graph_file(const GraphFile& gf);

Layout parse_layout_file(std::string_view text);

/// One filled rectangle per rect; fill from a fixed 16-entry palette indexed
/// by color. Byte-deterministic for identical inputs. Throws if k > 16.
std::string emit_svg(const Layout& layout, const Coloring& coloring);

/// Coloring output: `color <vertex_id> <color>` lines followed by a summary.
std::string format_coloring(std::span<const long long> vertex_ids,
                            const Coloring& coloring, const CostReport& cost,
                            long long time_ms);

}  // namespace mpld
