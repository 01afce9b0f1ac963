#include "mpld/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "mpld/division.hpp"
#include "mpld/fm.hpp"
#include "mpld/ghtree.hpp"
#include "mpld/linear.hpp"

namespace mpld {

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::exact: return "exact";
    case Algo::sdp_backtrack: return "sdp-backtrack";
    case Algo::sdp_greedy: return "sdp-greedy";
    case Algo::linear: return "linear";
    case Algo::fm: return "fm";
  }
  return "?";
}

std::optional<Algo> algo_from_name(std::string_view name) {
  if (name == "exact") return Algo::exact;
  if (name == "sdp-backtrack") return Algo::sdp_backtrack;
  if (name == "sdp-greedy") return Algo::sdp_greedy;
  if (name == "linear") return Algo::linear;
  if (name == "fm") return Algo::fm;
  return std::nullopt;
}

void PipelineConfig::validate() const {
  if (k != 0 && (k < 2 || k > 16))
    throw std::invalid_argument("k must be in [2, 16]");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (relax.t_th <= 0.0 || relax.t_th > 1.0)
    throw std::invalid_argument("t_th must be in (0, 1]");
  if (min_s < 0 || hp < 0)
    throw std::invalid_argument("min_s and hp must be >= 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (fm_passes < 1 || fm_seeds < 1)
    throw std::invalid_argument("fm passes/seeds must be >= 1");
  if (limits.max_vertices < 1 || limits.max_nodes < 1 ||
      limits.time_budget_ms < 1)
    throw std::invalid_argument("search limits must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timers {
  std::atomic<std::int64_t> divide_ns{0};
  std::atomic<std::int64_t> solve_ns{0};
  std::atomic<std::int64_t> merge_ns{0};
};

struct Ticker {
  std::atomic<std::int64_t>& sink;
  Clock::time_point start = Clock::now();
  explicit Ticker(std::atomic<std::int64_t>& s) : sink(s) {}
  ~Ticker() {
    sink.fetch_add(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                             start)
            .count());
  }
};

struct SolveContext {
  const PipelineConfig& cfg;
  int k;
  Timers timers;
  std::atomic<long long> peeled{0};
  std::atomic<long long> cuts_removed{0};
  std::atomic<int> fallbacks{0};
  std::atomic<bool> budget_exhausted{false};
};

// Per-component debug text; each worker writes only its own sink.
struct DumpSink {
  std::string orders, affinity, ghtree;
  int next_part = 0;
};

void dump_affinity_matrix(DumpSink& sink, int part, const AffinityMatrix& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "part %d n=%d\n", part, x.n);
  sink.affinity += buf;
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.n; ++j) {
      std::snprintf(buf, sizeof(buf), j + 1 == x.n ? "%.6f\n" : "%.6f ",
                    x.at(i, j));
      sink.affinity += buf;
    }
  }
}

// Leaf dispatch: color one indivisible part with the configured algorithm.
Coloring solve_part(const DecompositionGraph& g, SolveContext& ctx,
                    DumpSink& sink) {
  Ticker tick(ctx.timers.solve_ns);
  const PipelineConfig& cfg = ctx.cfg;
  const int k = ctx.k;
  const int part = sink.next_part++;
  switch (cfg.algo) {
    case Algo::exact:
      try {
        const ExactResult r = solve_exact(g, k, cfg.alpha, cfg.limits);
        if (!r.optimal) ctx.budget_exhausted = true;
        return r.coloring;
      } catch (const SizeLimitError&) {
        ctx.fallbacks.fetch_add(1);
        return linear_assign(g, k, cfg.alpha, {.literal_peel_rule = cfg.literal_peel_rule});
      }
    case Algo::sdp_backtrack: {
      const AffinityMatrix x =
          solve_relaxation(g, k, cfg.alpha, cfg.relax, nullptr);
      if (cfg.dump_affinity) dump_affinity_matrix(sink, part, x);
      const MergedGraph merged = threshold_merge(x, g, cfg.relax.t_th);
      const BacktrackResult r =
          backtrack_color(merged, k, cfg.alpha, cfg.limits);
      if (r.fell_back_to_linear) ctx.fallbacks.fetch_add(1);
      if (r.budget_exhausted) ctx.budget_exhausted = true;
      return r.coloring;
    }
    case Algo::sdp_greedy: {
      const AffinityMatrix x =
          solve_relaxation(g, k, cfg.alpha, cfg.relax, nullptr);
      if (cfg.dump_affinity) dump_affinity_matrix(sink, part, x);
      return greedy_mapping(x, g, k, cfg.alpha);
    }
    case Algo::linear: {
      LinearOptions options;
      options.literal_peel_rule = cfg.literal_peel_rule;
      std::vector<double> order_costs;
      if (cfg.dump_orders) options.order_costs = &order_costs;
      const Coloring c = linear_assign(g, k, cfg.alpha, options);
      if (cfg.dump_orders && !order_costs.empty()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "orders part=%d n=%d sequence=%.4f degree=%.4f "
                      "threeround=%.4f\n",
                      part, g.n, order_costs[0], order_costs[1],
                      order_costs[2]);
        sink.orders += buf;
      }
      return c;
    }
    case Algo::fm: {
      Coloring best;
      double best_cost = 0.0;
      for (int s = 0; s < cfg.fm_seeds; ++s) {
        Coloring cand = fm_color(g, k, cfg.alpha, cfg.seed + s, cfg.fm_passes);
        const double cost = evaluate_cost(g, cand, cfg.alpha).weighted;
        if (s == 0 || cost < best_cost - 1e-12) {
          best = std::move(cand);
          best_cost = cost;
        }
      }
      return best;
    }
  }
  return Coloring{std::vector<int>(g.n, 0), ctx.k};
}

// Gomory-Hu cut removal layer, applied to one biconnected block.
Coloring solve_block(const DecompositionGraph& g, SolveContext& ctx,
                     DumpSink& sink) {
  if (!ctx.cfg.ghtree || g.n < 3) return solve_part(g, ctx, sink);

  KCutPartition parts;
  {
    Ticker tick(ctx.timers.divide_ns);
    const FlowNetwork net = weighted_network(g);
    const GomoryHuTree tree = build_gomory_hu(net);
    const RoundedTree rounded = refine_and_round(tree);
    if (ctx.cfg.dump_ghtree) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "block n=%d\n", g.n);
      sink.ghtree += buf;
      for (const auto& e : tree.edges) {
        std::snprintf(buf, sizeof(buf), "ghtree %d %d %lld.%lld\n", e.u, e.v,
                      static_cast<long long>(e.flow_tenths / 10),
                      static_cast<long long>(e.flow_tenths % 10));
        sink.ghtree += buf;
      }
    }
    parts = remove_kcuts(rounded, net, g, ctx.k);
  }
  if (parts.comp_count <= 1) return solve_part(g, ctx, sink);
  ctx.cuts_removed.fetch_add(static_cast<long long>(parts.cuts.size()));

  std::vector<int> colors(g.n, -1);
  for (int c = 0; c < parts.comp_count; ++c) {
    std::vector<int> members;
    for (int v = 0; v < g.n; ++v)
      if (parts.comp_of[v] == c) members.push_back(v);
    const Subgraph sub = induce_subgraph(g, members);
    const Coloring part_colors = solve_part(sub.graph, ctx, sink);
    for (size_t i = 0; i < sub.to_parent.size(); ++i)
      colors[sub.to_parent[i]] = part_colors.color[i];
  }
  {
    Ticker tick(ctx.timers.merge_ns);
    merge_with_rotation(g, parts, colors, ctx.k);
  }
  Coloring out;
  out.k = ctx.k;
  out.color = std::move(colors);
  return out;
}

// Peel + biconnected split layer, applied to one connected component.
Coloring solve_component(const DecompositionGraph& g, SolveContext& ctx,
                         DumpSink& sink) {
  const int k = ctx.k;
  PeelResult peel;
  {
    Ticker tick(ctx.timers.divide_ns);
    if (ctx.cfg.peel) {
      peel = peel_low_degree(g, k, ctx.cfg.literal_peel_rule);
    } else {
      std::vector<int> all(g.n);
      for (int v = 0; v < g.n; ++v) all[v] = v;
      peel.reduced = induce_subgraph(g, all);
    }
  }
  ctx.peeled.fetch_add(static_cast<long long>(peel.stack.size()));

  std::vector<int> colors(g.n, -1);
  const DecompositionGraph& core = peel.reduced.graph;
  if (core.n > 0) {
    Coloring core_colors;
    if (ctx.cfg.bcc) {
      BccSplit split;
      {
        Ticker tick(ctx.timers.divide_ns);
        split = biconnected_split(core);
      }
      std::vector<Coloring> block_colors;
      block_colors.reserve(split.components.size());
      for (const Subgraph& block : split.components)
        block_colors.push_back(solve_block(block.graph, ctx, sink));
      Ticker tick(ctx.timers.merge_ns);
      core_colors = merge_at_articulations(split, block_colors, core.n, k);
    } else {
      core_colors = solve_block(core, ctx, sink);
    }
    for (size_t i = 0; i < peel.reduced.to_parent.size(); ++i)
      colors[peel.reduced.to_parent[i]] = core_colors.color[i];
  }
  {
    Ticker tick(ctx.timers.merge_ns);
    reinsert_peeled(peel.stack, g, colors, k, ctx.cfg.alpha);
  }
  Coloring out;
  out.k = k;
  out.color = std::move(colors);
  return out;
}

}  // namespace

PipelineResult run_pipeline_on_graph(const DecompositionGraph& g,
                                     const PipelineConfig& config) {
  config.validate();
  if (config.k == 0)
    throw std::invalid_argument("k must be resolved before running");
  const auto t0 = Clock::now();

  SolveContext ctx{config, config.k, {}, {}, {}, {}, {}};

  std::vector<Subgraph> comps;
  {
    Ticker tick(ctx.timers.divide_ns);
    comps = independent_components(g);
  }

  std::vector<Coloring> comp_colors(comps.size());
  std::vector<DumpSink> sinks(comps.size());
  const int workers =
      std::max(1, std::min<int>(config.workers, static_cast<int>(comps.size())));
  if (workers == 1) {
    for (size_t i = 0; i < comps.size(); ++i)
      comp_colors[i] = solve_component(comps[i].graph, ctx, sinks[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const size_t i = next.fetch_add(1);
          if (i >= comps.size()) break;
          comp_colors[i] = solve_component(comps[i].graph, ctx, sinks[i]);
        }
      });
    for (auto& t : pool) t.join();
  }

  PipelineResult result;
  result.coloring.k = config.k;
  result.coloring.color.assign(g.n, 0);
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = 0; j < comps[i].to_parent.size(); ++j)
      result.coloring.color[comps[i].to_parent[j]] = comp_colors[i].color[j];

  RunReport& report = result.report;
  report.total = evaluate_cost(g, result.coloring, config.alpha);
  report.components = static_cast<int>(comps.size());
  report.peeled = ctx.peeled.load();
  report.cuts_removed = ctx.cuts_removed.load();
  report.fallbacks = ctx.fallbacks.load();
  report.budget_exhausted = ctx.budget_exhausted.load();
  for (size_t i = 0; i < comps.size(); ++i) {
    const CostReport cr =
        evaluate_cost(comps[i].graph, comp_colors[i], config.alpha);
    report.component_stats.push_back({static_cast<int>(i),
                                      comps[i].graph.n, cr.conflicts,
                                      cr.stitches});
  }
  report.ms_divide = ctx.timers.divide_ns.load() / 1e6;
  report.ms_solve = ctx.timers.solve_ns.load() / 1e6;
  report.ms_merge = ctx.timers.merge_ns.load() / 1e6;
  report.ms_total =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  for (const DumpSink& sink : sinks) {
    result.orders_dump += sink.orders;
    result.affinity_dump += sink.affinity;
    result.ghtree_dump += sink.ghtree;
  }
  result.vertex_ids.resize(g.n);
  for (int v = 0; v < g.n; ++v) result.vertex_ids[v] = v;
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  std::ifstream in(config.input_path);
  if (!in) throw std::runtime_error("cannot open " + config.input_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto t0 = Clock::now();
  PipelineConfig effective = config;
  DecompositionGraph graph;
  std::vector<long long> vertex_ids;
  std::vector<std::string> warnings;
  std::optional<Layout> layout;

  if (config.format == InputFormat::dg) {
    GraphFile gf = parse_graph_file(text);
    const auto violations = validate(gf.graph);
    if (!violations.empty()) throw ParseError(0, violations.front());
    if (effective.k == 0) effective.k = gf.k_hint > 0 ? gf.k_hint : 4;
    graph = std::move(gf.graph);
    vertex_ids = std::move(gf.vertex_ids);
  } else {
    Layout lay = parse_layout_file(text);
    if (effective.k == 0) effective.k = 4;
    if (config.min_s > 0)
      lay.min_s = config.min_s;
    if (config.hp > 0) lay.hp = config.hp;
    graph = build_graph(lay, config.metric, true, &warnings);
    vertex_ids.resize(graph.n);
    for (int v = 0; v < graph.n; ++v) vertex_ids[v] = v;
    layout = std::move(lay);
  }
  const double ms_build =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  PipelineResult result = run_pipeline_on_graph(graph, effective);
  result.vertex_ids = std::move(vertex_ids);
  result.layout = std::move(layout);
  result.warnings = std::move(warnings);
  result.report.ms_build = ms_build;
  result.report.ms_total += ms_build;
  return result;
}

std::string format_stats(const PipelineConfig& config,
                         const RunReport& report) {
  char buf[256];
  std::string out;
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out += buf;
  };
  line("algo=%s\n", algo_name(config.algo));
  line("k=%d\n", config.k);
  line("alpha=%.4f\n", config.alpha);
  line("seed=%u\n", config.seed);
  line("t_th=%.4f\n", config.relax.t_th);
  line("stages=peel:%d,bcc:%d,ghtree:%d\n", config.peel ? 1 : 0,
       config.bcc ? 1 : 0, config.ghtree ? 1 : 0);
  line("components=%d\n", report.components);
  line("peeled=%lld\n", report.peeled);
  line("cuts_removed=%lld\n", report.cuts_removed);
  line("fallbacks=%d\n", report.fallbacks);
  line("budget_exhausted=%d\n", report.budget_exhausted ? 1 : 0);
  line("conflicts=%lld\n", report.total.conflicts);
  line("stitches=%lld\n", report.total.stitches);
  line("cost=%.4f\n", report.total.weighted);
  line("time_build_ms=%.3f\n", report.ms_build);
  line("time_divide_ms=%.3f\n", report.ms_divide);
  line("time_solve_ms=%.3f\n", report.ms_solve);
  line("time_merge_ms=%.3f\n", report.ms_merge);
  line("time_total_ms=%.3f\n", report.ms_total);
  return out;
}

}  // namespace mpld
