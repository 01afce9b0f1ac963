#include "mpld/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace mpld {

namespace {

// Component gaps between closed intervals; 0 when they overlap or touch.
long long axis_gap(long long a1, long long a2, long long b1, long long b2) {
  return std::max({0LL, b1 - a2, a1 - b2});
}

struct PairGap {
  long long gx, gy;
};

PairGap rect_axis_gaps(const Rect& a, const Rect& b) {
  return {axis_gap(a.x1, a.x2, b.x1, b.x2), axis_gap(a.y1, a.y2, b.y1, b.y2)};
}

// gap < t, exact integer arithmetic.
bool gap_less(const PairGap& g, long long t, DistanceMetric m) {
  if (m == DistanceMetric::rectilinear) return g.gx + g.gy < t;
  return g.gx * g.gx + g.gy * g.gy < t * t;
}

// gap > t.
bool gap_greater(const PairGap& g, long long t, DistanceMetric m) {
  if (m == DistanceMetric::rectilinear) return g.gx + g.gy > t;
  return g.gx * g.gx + g.gy * g.gy > t * t;
}

bool abutting(const Rect& a, const Rect& b) {
  const long long ox = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const long long oy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if ((a.x2 == b.x1 || b.x2 == a.x1) && oy > 0) return true;
  if ((a.y2 == b.y1 || b.y2 == a.y1) && ox > 0) return true;
  return false;
}

bool interiors_overlap(const Rect& a, const Rect& b) {
  const long long ox = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const long long oy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  return ox > 0 && oy > 0;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::uint64_t cell_key(long long cx, long long cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint32_t>(cy);
}

}  // namespace

double rect_gap(const Rect& a, const Rect& b, DistanceMetric metric) {
  const auto g = rect_axis_gaps(a, b);
  if (metric == DistanceMetric::rectilinear)
    return static_cast<double>(g.gx + g.gy);
  return std::hypot(static_cast<double>(g.gx), static_cast<double>(g.gy));
}

DecompositionGraph build_graph(const Layout& layout, DistanceMetric metric,
                               bool with_friendly,
                               std::vector<std::string>* warnings) {
  const int n = static_cast<int>(layout.rects.size());
  DecompositionGraph g(n);
  const long long reach = layout.min_s + layout.hp;
  const long long cell = std::max<long long>(1, reach);

  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  grid.reserve(static_cast<size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    const Rect& r = layout.rects[i];
    for (long long cx = floor_div(r.x1, cell); cx <= floor_div(r.x2, cell); ++cx)
      for (long long cy = floor_div(r.y1, cell); cy <= floor_div(r.y2, cell); ++cy)
        grid[cell_key(cx, cy)].push_back(i);
  }

  std::vector<int> stamp(n, -1);
  for (int i = 0; i < n; ++i) {
    const Rect& a = layout.rects[i];
    for (long long cx = floor_div(a.x1 - reach, cell);
         cx <= floor_div(a.x2 + reach, cell); ++cx) {
      for (long long cy = floor_div(a.y1 - reach, cell);
           cy <= floor_div(a.y2 + reach, cell); ++cy) {
        auto it = grid.find(cell_key(cx, cy));
        if (it == grid.end()) continue;
        for (int j : it->second) {
          if (j <= i || stamp[j] == i) continue;
          stamp[j] = i;
          const Rect& b = layout.rects[j];
          const auto gap = rect_axis_gaps(a, b);
          if (a.polygon_id == b.polygon_id) {
            if (abutting(a, b)) g.add_stitch(i, j);
            continue;
          }
          if (warnings && interiors_overlap(a, b))
            warnings->push_back("rects " + std::to_string(i) + " and " +
                                std::to_string(j) +
                                " of different polygons overlap");
          if (gap_less(gap, layout.min_s, metric)) {
            g.add_conflict(i, j);
          } else if (with_friendly && gap_greater(gap, layout.min_s, metric) &&
                     gap_less(gap, reach, metric)) {
            g.add_friendly(i, j);
          }
        }
      }
    }
  }
  g.canonicalize();
  return g;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(pos, end - pos));
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream iss(raw);
    Line line{number, {}};
    std::string tok;
    while (iss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

long long parse_int(const std::string& tok, int line) {
  size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return value;
}

}  // namespace

GraphFile parse_graph_file(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'dg 1' header");
  const Line& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "dg" ||
      head.tokens[1] != "1")
    throw ParseError(head.number, "missing 'dg 1' header");

  GraphFile gf;
  std::unordered_map<long long, int> dense;
  auto vertex = [&](const std::string& tok, int line) {
    const long long id = parse_int(tok, line);
    auto it = dense.find(id);
    if (it == dense.end())
      throw ParseError(line, "unknown vertex " + std::to_string(id));
    return it->second;
  };

  for (size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    if (t[0] == "param") {
      if (t.size() != 3 || t[1] != "k")
        throw ParseError(line.number, "malformed param line");
      const long long k = parse_int(t[2], line.number);
      if (k < 2) throw ParseError(line.number, "param k must be >= 2");
      gf.k_hint = static_cast<int>(k);
    } else if (t[0] == "v") {
      if (t.size() != 2) throw ParseError(line.number, "malformed v line");
      const long long id = parse_int(t[1], line.number);
      if (id < 0) throw ParseError(line.number, "vertex ids are non-negative");
      if (dense.count(id))
        throw ParseError(line.number,
                         "duplicate vertex id " + std::to_string(id));
      dense[id] = static_cast<int>(gf.vertex_ids.size());
      gf.vertex_ids.push_back(id);
    } else if (t[0] == "ce" || t[0] == "se" || t[0] == "fe") {
      if (t.size() != 3) throw ParseError(line.number, "malformed edge line");
      const int u = vertex(t[1], line.number);
      const int v = vertex(t[2], line.number);
      if (u == v) throw ParseError(line.number, "self-loop edge");
      if (t[0] == "ce")
        gf.graph.add_conflict(u, v);
      else if (t[0] == "se")
        gf.graph.add_stitch(u, v);
      else
        gf.graph.add_friendly(u, v);
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  gf.graph.n = static_cast<int>(gf.vertex_ids.size());
  gf.graph.canonicalize();
  return gf;
}

std::string serialize_graph_file(const GraphFile& gf) {
  std::string out = "dg 1\n";
  if (gf.k_hint > 0) out += "param k " + std::to_string(gf.k_hint) + "\n";

  std::vector<long long> ids = gf.vertex_ids;
  std::sort(ids.begin(), ids.end());
  for (long long id : ids) out += "v " + std::to_string(id) + "\n";

  auto emit = [&](const char* tag, const std::vector<Edge>& edges) {
    std::vector<std::pair<long long, long long>> mapped;
    mapped.reserve(edges.size());
    for (const auto& [u, v] : edges) {
      long long a = gf.vertex_ids[u], b = gf.vertex_ids[v];
      if (a > b) std::swap(a, b);
      mapped.emplace_back(a, b);
    }
    std::sort(mapped.begin(), mapped.end());
    for (const auto& [a, b] : mapped)
      out += std::string(tag) + " " + std::to_string(a) + " " +
             std::to_string(b) + "\n";
  };
  emit("ce", gf.graph.ce);
  emit("se", gf.graph.se);
  emit("fe", gf.graph.fe);
  return out;
}

Layout parse_layout_file(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'lay 1' header");
  const Line& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "lay" ||
      head.tokens[1] != "1")
    throw ParseError(head.number, "missing 'lay 1' header");

  Layout layout;
  for (size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    if (t[0] == "param") {
      if (t.size() != 3) throw ParseError(line.number, "malformed param line");
      const long long value = parse_int(t[2], line.number);
      if (value <= 0) throw ParseError(line.number, "param must be positive");
      if (t[1] == "min_s")
        layout.min_s = static_cast<int>(value);
      else if (t[1] == "hp")
        layout.hp = static_cast<int>(value);
      else
        throw ParseError(line.number, "unknown param '" + t[1] + "'");
    } else if (t[0] == "rect") {
      if (t.size() != 6) throw ParseError(line.number, "malformed rect line");
      Rect r;
      r.polygon_id = static_cast<int>(parse_int(t[1], line.number));
      r.x1 = parse_int(t[2], line.number);
      r.y1 = parse_int(t[3], line.number);
      r.x2 = parse_int(t[4], line.number);
      r.y2 = parse_int(t[5], line.number);
      if (r.x1 >= r.x2 || r.y1 >= r.y2)
        throw ParseError(line.number, "rect must have x1 < x2 and y1 < y2");
      layout.rects.push_back(r);
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  return layout;
}

namespace {

constexpr const char* kPalette[16] = {
    "#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#008080", "#9a6324", "#fffac8",
    "#800000", "#aaffc3", "#808000", "#e6beff"};

}  // namespace

std::string emit_svg(const Layout& layout, const Coloring& coloring) {
  if (coloring.k > 16) throw std::invalid_argument("palette holds 16 colors");
  if (coloring.color.size() != layout.rects.size())
    throw std::invalid_argument("coloring does not cover all rects");

  long long minx = 0, miny = 0, maxx = 1, maxy = 1;
  if (!layout.rects.empty()) {
    minx = maxx = layout.rects[0].x1;
    miny = maxy = layout.rects[0].y1;
    for (const Rect& r : layout.rects) {
      minx = std::min(minx, r.x1);
      miny = std::min(miny, r.y1);
      maxx = std::max(maxx, r.x2);
      maxy = std::max(maxy, r.y2);
    }
  }
  const long long pad = 10;
  char buf[256];
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%lld "
                "%lld %lld %lld\">\n",
                minx - pad, miny - pad, (maxx - minx) + 2 * pad,
                (maxy - miny) + 2 * pad);
  out += buf;
  for (size_t i = 0; i < layout.rects.size(); ++i) {
    const Rect& r = layout.rects[i];
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%lld\" y=\"%lld\" width=\"%lld\" height=\"%lld\" "
                  "fill=\"%s\" stroke=\"black\" stroke-width=\"1\"/>\n",
                  r.x1, r.y1, r.x2 - r.x1, r.y2 - r.y1,
                  kPalette[coloring.color[i]]);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

std::string format_coloring(std::span<const long long> vertex_ids,
                            const Coloring& coloring, const CostReport& cost,
                            long long time_ms) {
  std::string out;
  for (size_t i = 0; i < coloring.color.size(); ++i) {
    const long long id =
        i < vertex_ids.size() ? vertex_ids[i] : static_cast<long long>(i);
    out += "color " + std::to_string(id) + " " +
           std::to_string(coloring.color[i]) + "\n";
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "summary cn=%lld st=%lld cost=%.4f time_ms=%lld\n",
                cost.conflicts, cost.stitches, cost.weighted, time_ms);
  out += buf;
  return out;
}

}  // namespace mpld
