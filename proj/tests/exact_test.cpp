#include <doctest.h>

#include <random>

#include "mpld/exact.hpp"
#include "oracles.hpp"

using namespace mpld;

namespace {

DecompositionGraph complete_ce(int n) {
  DecompositionGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_conflict(u, v);
  g.canonicalize();
  return g;
}

}  // namespace

TEST_CASE("solve_exact on complete graphs") {
  const ExactResult k4 = solve_exact(complete_ce(4), 4, 0.1);
  CHECK(k4.optimal);
  CHECK(k4.cost.weighted == doctest::Approx(0.0));

  const ExactResult k5 = solve_exact(complete_ce(5), 4, 0.1);
  CHECK(k5.optimal);
  CHECK(k5.cost.conflicts == 1);
  CHECK(k5.cost.stitches == 0);
  const auto oracle = test::enumerate_best(complete_ce(5), 4, 0.1);
  CHECK(k5.cost.weighted == doctest::Approx(oracle.weighted));
}

TEST_CASE("solve_exact equals full enumeration on random graphs") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 7);  // up to 10
    const int k = 3 + static_cast<int>(rng() % 3);  // 3..5
    const DecompositionGraph g = test::random_graph(rng, n, 0.45, 0.2);
    const ExactResult r = solve_exact(g, k, 0.1);
    REQUIRE(r.optimal);
    const auto oracle = test::enumerate_best(g, k, 0.1);
    CHECK(r.cost.weighted == doctest::Approx(oracle.weighted).epsilon(1e-12));
    const CostReport check = evaluate_cost(g, r.coloring, 0.1);
    CHECK(check.weighted == doctest::Approx(r.cost.weighted));
  }
}

TEST_CASE("adding a conflict edge never lowers the optimum") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    DecompositionGraph g = test::random_graph(rng, 8, 0.4, 0.15);
    const double before = solve_exact(g, 4, 0.1).cost.weighted;
    // add a missing CE pair
    for (int u = 0; u < g.n; ++u) {
      bool added = false;
      for (int v = u + 1; v < g.n; ++v) {
        const Edge e = make_edge(u, v);
        if (std::find(g.ce.begin(), g.ce.end(), e) == g.ce.end() &&
            std::find(g.se.begin(), g.se.end(), e) == g.se.end()) {
          g.add_conflict(u, v);
          g.canonicalize();
          added = true;
          break;
        }
      }
      if (added) break;
    }
    const double after = solve_exact(g, 4, 0.1).cost.weighted;
    CHECK(after >= before - 1e-9);
  }
}

TEST_CASE("alpha = 0 reduces to classic colorability") {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const DecompositionGraph g = test::random_graph(rng, 8, 0.5, 0.2);
    const ExactResult r = solve_exact(g, 4, 0.0);
    const auto oracle = test::enumerate_best(g, 4, 0.0);
    CHECK(r.cost.conflicts == oracle.conflicts);
    CHECK(r.cost.weighted == doctest::Approx(oracle.weighted));
  }
}

TEST_CASE("solver output is deterministic") {
  std::mt19937 rng(79);
  const DecompositionGraph g = test::random_graph(rng, 9, 0.4, 0.2);
  const ExactResult a = solve_exact(g, 4, 0.1);
  const ExactResult b = solve_exact(g, 4, 0.1);
  CHECK(a.coloring.color == b.coloring.color);
}

TEST_CASE("limits") {
  SUBCASE("size limit throws") {
    SearchLimits limits;
    limits.max_vertices = 4;
    CHECK_THROWS_AS(solve_exact(complete_ce(5), 4, 0.1, limits),
                    SizeLimitError);
  }
  SUBCASE("node budget returns an incumbent") {
    std::mt19937 rng(83);
    const DecompositionGraph g = test::random_graph(rng, 14, 0.5, 0.2);
    SearchLimits limits;
    limits.max_nodes = 10;
    const ExactResult r = solve_exact(g, 4, 0.1, limits);
    CHECK(!r.optimal);
    CHECK(static_cast<int>(r.coloring.color.size()) == g.n);
    const CostReport check = evaluate_cost(g, r.coloring, 0.1);
    CHECK(check.weighted == doctest::Approx(r.cost.weighted));
  }
  SUBCASE("warm start caps the result") {
    std::mt19937 rng(89);
    const DecompositionGraph g = test::random_graph(rng, 12, 0.5, 0.2);
    const Coloring warm = solve_exact(g, 4, 0.1).coloring;
    SearchLimits limits;
    limits.max_nodes = 5;
    const ExactResult r = solve_exact(g, 4, 0.1, limits, &warm);
    CHECK(r.cost.weighted <=
          evaluate_cost(g, warm, 0.1).weighted + 1e-9);
  }
}

TEST_CASE("weighted search honors multiplicities") {
  // Two groups with a doubled conflict edge: violating it costs 2.
  DecompositionGraph g(2);
  g.add_conflict(0, 1);
  const std::vector<int> ce_w{2};
  const std::vector<int> se_w;
  const ExactResult r = solve_exact_weighted(g, ce_w, se_w, 2, 0.1);
  CHECK(r.cost.weighted == doctest::Approx(0.0));

  // Force the conflict with k = 1 colors impossible; instead weight a stitch.
  DecompositionGraph h(2);
  h.add_stitch(0, 1);
  const std::vector<int> hce;
  const std::vector<int> hse{3};
  const ExactResult rs = solve_exact_weighted(h, hce, hse, 4, 0.1);
  CHECK(rs.cost.stitches == 0);  // same color avoids all three stitch units
}
