#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpld/exact.hpp"
#include "mpld/graph.hpp"
#include "mpld/layout.hpp"
#include "mpld/relax.hpp"

namespace mpld {

enum class Algo { exact, sdp_backtrack, sdp_greedy, linear, fm };

const char* algo_name(Algo algo);
std::optional<Algo> algo_from_name(std::string_view name);

enum class InputFormat { dg, lay };

struct PipelineConfig {
  std::string input_path;
  InputFormat format = InputFormat::dg;
  int k = 4;
  double alpha = 0.1;
  int min_s = 0;  // 0: keep the file's value
  int hp = 0;     // 0: keep the file's value
  DistanceMetric metric = DistanceMetric::euclidean;
  Algo algo = Algo::sdp_backtrack;
  RelaxParams relax;
  unsigned seed = 1;
  bool peel = true;
  bool bcc = true;
  bool ghtree = true;
  bool literal_peel_rule = false;
  int workers = 1;
  int fm_passes = 50;
  int fm_seeds = 1;
  SearchLimits limits{44, 2'000'000, 5'000};
  bool dump_orders = false;    // per-part costs of the three linear orders
  bool dump_affinity = false;  // per-part affinity matrices
  bool dump_ghtree = false;    // per-block tree edges

  void validate() const;  // throws std::invalid_argument
};

struct ComponentStat {
  int id = 0;
  int size = 0;
  long long conflicts = 0;
  long long stitches = 0;
};

struct RunReport {
  CostReport total;  // re-evaluated on the full input graph
  int components = 0;
  long long peeled = 0;
  long long cuts_removed = 0;
  int fallbacks = 0;
  bool budget_exhausted = false;
  double ms_build = 0.0;
  double ms_divide = 0.0;
  double ms_solve = 0.0;
  double ms_merge = 0.0;
  double ms_total = 0.0;
  std::vector<ComponentStat> component_stats;
};

struct PipelineResult {
  RunReport report;
  Coloring coloring;
  std::vector<long long> vertex_ids;  // dense id -> input id
  std::optional<Layout> layout;       // present for .lay inputs
  std::vector<std::string> warnings;  // geometry warnings from build_graph
  std::string orders_dump;            // filled when the dump flags are set
  std::string affinity_dump;
  std::string ghtree_dump;
};

/// Full flow on an in-memory graph: division stages per config toggles,
/// per-component solve with the selected algorithm, rotation/articulation
/// merges, peel reinsertion, and a from-scratch final cost evaluation.
PipelineResult run_pipeline_on_graph(const DecompositionGraph& g,
                                     const PipelineConfig& config);

/// Reads config.input_path (dg or lay), then runs the graph pipeline.
PipelineResult run_pipeline(const PipelineConfig& config);

std::string format_stats(const PipelineConfig& config, const RunReport& report);

}  // namespace mpld
