#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "mpld/pipeline.hpp"
#include "mpld/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitBudget = 4;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int run_decompose(const mpld::PipelineConfig& config,
                  const std::string& out_coloring, const std::string& out_svg,
                  const std::string& out_stats,
                  const std::string& out_affinity,
                  const std::string& out_ghtree) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const mpld::PipelineResult result = mpld::run_pipeline(config);
  const long long time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
          .count();

  for (const std::string& warning : result.warnings)
    std::cerr << "warning: " << warning << "\n";

  mpld::PipelineConfig echo = config;
  if (echo.k == 0) echo.k = result.coloring.k;
  if (!out_coloring.empty())
    write_file(out_coloring,
               mpld::format_coloring(result.vertex_ids, result.coloring,
                                     result.report.total, time_ms));
  if (!out_svg.empty()) {
    if (!result.layout)
      throw CLI::ValidationError("--svg requires a .lay input");
    write_file(out_svg, mpld::emit_svg(*result.layout, result.coloring));
  }
  if (!out_stats.empty())
    write_file(out_stats, mpld::format_stats(echo, result.report));
  if (config.dump_orders) std::cout << result.orders_dump;
  if (!out_affinity.empty()) write_file(out_affinity, result.affinity_dump);
  if (!out_ghtree.empty()) write_file(out_ghtree, result.ghtree_dump);

  std::cout << "components=" << result.report.components
            << " peeled=" << result.report.peeled
            << " cuts=" << result.report.cuts_removed
            << " cn=" << result.report.total.conflicts
            << " st=" << result.report.total.stitches
            << " cost=" << result.report.total.weighted << "\n";
  return result.report.budget_exhausted ? kExitBudget : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-patterning layout decomposition"};
  app.require_subcommand(1);

  // --- decompose ---
  auto* dec = app.add_subcommand(
      "decompose", "Color a layout or decomposition graph into k masks");
  mpld::PipelineConfig config;
  config.k = 0;  // resolve from the input file unless given
  std::string format = "dg", algo = "sdp-backtrack", metric = "euclidean";
  std::string out_coloring, out_svg, out_stats;
  bool no_peel = false, no_bcc = false, no_ghtree = false;
  long long max_nodes = static_cast<long long>(config.limits.max_nodes);

  dec->add_option("--input", config.input_path, "Input file")->required();
  dec->add_option("--format", format, "Input format: dg | lay")
      ->check(CLI::IsMember({"dg", "lay"}));
  dec->add_option("--k", config.k, "Number of masks");
  dec->add_option("--alpha", config.alpha, "Stitch weight in the objective");
  dec->add_option("--min-s", config.min_s, "Minimum coloring distance (nm)");
  dec->add_option("--hp", config.hp, "Half pitch (nm)");
  dec->add_option("--algo", algo,
                  "exact | sdp-backtrack | sdp-greedy | linear | fm")
      ->check(CLI::IsMember(
          {"exact", "sdp-backtrack", "sdp-greedy", "linear", "fm"}));
  dec->add_option("--metric", metric, "Distance metric")
      ->check(CLI::IsMember({"euclidean", "rectilinear"}));
  dec->add_option("--t-th", config.relax.t_th, "Merge threshold");
  dec->add_option("--seed", config.seed, "Random seed");
  dec->add_option("--workers", config.workers, "Parallel component solvers");
  dec->add_option("--fm-passes", config.fm_passes, "FM pass limit");
  dec->add_option("--fm-seeds", config.fm_seeds, "FM restarts (best-of)");
  dec->add_option("--max-vertices", config.limits.max_vertices,
                  "Exhaustive-search vertex limit");
  dec->add_option("--max-nodes", max_nodes, "Search-tree node budget");
  dec->add_option("--time-budget-ms", config.limits.time_budget_ms,
                  "Per-part search time budget");
  dec->add_flag("--no-peel", no_peel, "Disable low-degree peeling");
  dec->add_flag("--no-bcc", no_bcc, "Disable biconnected splitting");
  dec->add_flag("--no-ghtree", no_ghtree, "Disable cut removal");
  dec->add_flag("--literal-peel-rule", config.literal_peel_rule,
                "Peel on d_conf + d_stit < k instead of the split rule");
  dec->add_option("--out", out_coloring, "Coloring output file");
  dec->add_option("--svg", out_svg, "SVG rendering (lay input only)");
  dec->add_option("--stats", out_stats, "Stats output file");
  std::string out_affinity, out_ghtree;
  dec->add_flag("--dump-orders", config.dump_orders,
                "Print the three linear-order costs per part");
  dec->add_option("--dump-affinity", out_affinity,
                  "Write per-part affinity matrices to a file");
  dec->add_option("--dump-ghtree", out_ghtree,
                  "Write per-block tree edges to a file");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  mpld::SynthParams synth;
  std::string gen_out;
  bool as_graph = false;
  gen->add_option("--polygons", synth.n_polygons, "Polygon count")->required();
  gen->add_option("--density", synth.density, "Grid fill density (0,1]");
  gen->add_option("--stitch-rate", synth.stitch_rate, "Polygon split rate");
  gen->add_option("--k", synth.k, "Target mask count (sets min_s)");
  gen->add_option("--seed", synth.seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file")->required();
  gen->add_flag("--as-graph", as_graph, "Emit a .dg graph instead of .lay");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) {
      config.format =
          format == "lay" ? mpld::InputFormat::lay : mpld::InputFormat::dg;
      config.algo = *mpld::algo_from_name(algo);
      config.metric = metric == "rectilinear"
                          ? mpld::DistanceMetric::rectilinear
                          : mpld::DistanceMetric::euclidean;
      config.limits.max_nodes = static_cast<std::uint64_t>(max_nodes);
      config.peel = !no_peel;
      config.bcc = !no_bcc;
      config.ghtree = !no_ghtree;
      config.dump_affinity = !out_affinity.empty();
      config.dump_ghtree = !out_ghtree.empty();
      config.validate();
      return run_decompose(config, out_coloring, out_svg, out_stats,
                           out_affinity, out_ghtree);
    }
    if (gen->parsed()) {
      const mpld::Layout layout = mpld::generate_synthetic(synth);
      if (as_graph) {
        mpld::GraphFile gf;
        gf.graph = mpld::build_graph(layout);
        gf.k_hint = synth.k;
        gf.vertex_ids.resize(gf.graph.n);
        for (int v = 0; v < gf.graph.n; ++v) gf.vertex_ids[v] = v;
        write_file(gen_out, mpld::serialize_graph_file(gf));
      } else {
        std::string text = "lay 1\n";
        text += "param min_s " + std::to_string(layout.min_s) + "\n";
        text += "param hp " + std::to_string(layout.hp) + "\n";
        for (const mpld::Rect& r : layout.rects)
          text += "rect " + std::to_string(r.polygon_id) + " " +
                  std::to_string(r.x1) + " " + std::to_string(r.y1) + " " +
                  std::to_string(r.x2) + " " + std::to_string(r.y2) + "\n";
        write_file(gen_out, text);
      }
      return kExitOk;
    }
  } catch (const mpld::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
