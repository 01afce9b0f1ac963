#include <doctest.h>

#include <fstream>
#include <random>

#include "mpld/pipeline.hpp"
#include "mpld/synth.hpp"
#include "oracles.hpp"

using namespace mpld;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/mpld_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

// Everything except the wall-clock field, which legitimately varies.
std::string strip_time(std::string text) {
  const auto pos = text.find("time_ms=");
  if (pos != std::string::npos) text.resize(pos);
  return text;
}

}  // namespace

TEST_CASE("trivial two-vertex instance is clean under every algorithm") {
  const std::string path =
      write_temp("pair.dg", "dg 1\nv 0\nv 1\nce 0 1\n");
  for (Algo algo : {Algo::exact, Algo::sdp_backtrack, Algo::sdp_greedy,
                    Algo::linear, Algo::fm}) {
    PipelineConfig config;
    config.input_path = path;
    config.format = InputFormat::dg;
    config.algo = algo;
    const PipelineResult result = run_pipeline(config);
    CHECK(result.report.total.conflicts == 0);
    CHECK(result.report.total.stitches == 0);
  }
}

TEST_CASE("pipeline output is deterministic modulo wall time") {
  const Layout lay = generate_synthetic({80, 0.45, 0.3, 4, 11});
  std::string text = "lay 1\nparam min_s " + std::to_string(lay.min_s) +
                     "\nparam hp " + std::to_string(lay.hp) + "\n";
  for (const Rect& r : lay.rects)
    text += "rect " + std::to_string(r.polygon_id) + " " +
            std::to_string(r.x1) + " " + std::to_string(r.y1) + " " +
            std::to_string(r.x2) + " " + std::to_string(r.y2) + "\n";
  const std::string path = write_temp("det.lay", text);

  PipelineConfig config;
  config.input_path = path;
  config.format = InputFormat::lay;
  config.algo = Algo::sdp_backtrack;
  config.seed = 5;

  const PipelineResult a = run_pipeline(config);
  const PipelineResult b = run_pipeline(config);
  CHECK(a.coloring.color == b.coloring.color);
  const std::string text_a =
      format_coloring(a.vertex_ids, a.coloring, a.report.total, 1);
  const std::string text_b =
      format_coloring(b.vertex_ids, b.coloring, b.report.total, 1);
  CHECK(strip_time(text_a) == strip_time(text_b));

  SUBCASE("worker count does not change the result") {
    PipelineConfig parallel = config;
    parallel.workers = 4;
    const PipelineResult c = run_pipeline(parallel);
    CHECK(c.coloring.color == a.coloring.color);
  }
}

TEST_CASE("report totals always come from a fresh evaluation") {
  std::mt19937 rng(167);
  for (Algo algo : {Algo::linear, Algo::fm, Algo::sdp_backtrack}) {
    const DecompositionGraph g = test::random_graph(rng, 40, 0.2, 0.1);
    PipelineConfig config;
    config.algo = algo;
    const PipelineResult result = run_pipeline_on_graph(g, config);
    const CostReport fresh = evaluate_cost(g, result.coloring, config.alpha);
    CHECK(result.report.total.conflicts == fresh.conflicts);
    CHECK(result.report.total.stitches == fresh.stitches);
  }
}

TEST_CASE("stage toggles are honored") {
  std::mt19937 rng(173);
  const DecompositionGraph g = test::random_graph(rng, 30, 0.25, 0.1);
  PipelineConfig config;
  config.algo = Algo::linear;
  config.peel = false;
  config.bcc = false;
  config.ghtree = false;
  const PipelineResult result = run_pipeline_on_graph(g, config);
  CHECK(result.report.peeled == 0);
  CHECK(result.report.cuts_removed == 0);
  const CostReport fresh = evaluate_cost(g, result.coloring, config.alpha);
  CHECK(result.report.total.conflicts == fresh.conflicts);
}

TEST_CASE("exact fallback on oversized components is flagged") {
  std::mt19937 rng(179);
  const DecompositionGraph g = test::random_graph(rng, 40, 0.6, 0.1);
  PipelineConfig config;
  config.algo = Algo::exact;
  config.limits.max_vertices = 8;
  config.ghtree = false;  // keep one big block
  const PipelineResult result = run_pipeline_on_graph(g, config);
  CHECK(result.report.fallbacks > 0);
}

TEST_CASE("generator properties") {
  SUBCASE("deterministic for a fixed seed") {
    const Layout a = generate_synthetic({50, 0.3, 0.4, 4, 21});
    const Layout b = generate_synthetic({50, 0.3, 0.4, 4, 21});
    REQUIRE(a.rects.size() == b.rects.size());
    for (size_t i = 0; i < a.rects.size(); ++i) {
      CHECK(a.rects[i].x1 == b.rects[i].x1);
      CHECK(a.rects[i].polygon_id == b.rects[i].polygon_id);
    }
  }
  SUBCASE("stitch rate zero yields no stitch edges") {
    const Layout lay = generate_synthetic({60, 0.4, 0.0, 4, 23});
    CHECK(build_graph(lay).se.empty());
  }
  SUBCASE("positive stitch rate yields stitch edges") {
    const Layout lay = generate_synthetic({60, 0.4, 1.0, 4, 23});
    CHECK(!build_graph(lay).se.empty());
  }
  SUBCASE("dense instances embed a K5") {
    const Layout lay = generate_synthetic({120, 0.92, 0.1, 4, 29});
    const DecompositionGraph g = build_graph(lay);
    CHECK(test::has_ce_clique(g, 5));
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(generate_synthetic({0, 0.3, 0.1, 4, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic({10, 0.0, 0.1, 4, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic({10, 1.5, 0.1, 4, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("k=5 pipeline works end to end") {
  const Layout lay = generate_synthetic({60, 0.5, 0.2, 5, 31});
  CHECK(lay.min_s == 110);
  const DecompositionGraph g = build_graph(lay);
  PipelineConfig config;
  config.k = 5;
  config.algo = Algo::linear;
  const PipelineResult result = run_pipeline_on_graph(g, config);
  for (int c : result.coloring.color) CHECK(c < 5);
}

TEST_CASE("config validation") {
  PipelineConfig config;
  config.k = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.k = 4;
  config.alpha = -1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.alpha = 0.1;
  config.relax.t_th = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("stats block contains the key fields") {
  std::mt19937 rng(181);
  const DecompositionGraph g = test::random_graph(rng, 15, 0.3, 0.1);
  PipelineConfig config;
  config.algo = Algo::linear;
  const PipelineResult result = run_pipeline_on_graph(g, config);
  const std::string stats = format_stats(config, result.report);
  for (const char* key : {"algo=linear", "k=4", "conflicts=", "stitches=",
                          "cost=", "components=", "time_total_ms="})
    CHECK(stats.find(key) != std::string::npos);
}
