#include "strata/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>
#include <unordered_set>

#include "strata/bigram.hpp"
#include "strata/errors.hpp"
#include "strata/ingest.hpp"
#include "strata/layer_graph.hpp"
#include "strata/normalize.hpp"

namespace strata {

namespace {

constexpr std::size_t kTokenizeBatch = 1024;

class StageTimer {
 public:
  double lap() {
    const auto now = Clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }
  double total() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
  Clock::time_point last_ = start_;
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", s);
  return buf;
}

void log_stage(const std::string& line) { std::cerr << "[stratanet] " << line << "\n"; }

/// Attempted on every failure path past config validation; a report that
/// cannot be written must not mask the original failure.
void try_write_report(const RunReport& report, const std::filesystem::path& output_dir) {
  try {
    write_report(report, output_dir / "report.txt");
  } catch (const std::exception& e) {
    log_stage(std::string("report write failed: ") + e.what());
  }
}

StopwordSet load_stopwords(const PipelineConfig& cfg) {
  StopwordSet stops;
  if (!cfg.stopwords.replace) {
    if (cfg.stopwords.source == "builtin:en") {
      stops = StopwordSet::builtin_english();
    } else if (cfg.stopwords.source != "none") {
      stops = StopwordSet::from_file(cfg.resolve(cfg.stopwords.source));
    }
  } else {
    stops.set_source("config extra list");
  }
  for (const auto& word : cfg.stopwords.extra) stops.add(word);
  return stops;
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& cfg) {
  RunResult result;

  const std::vector<std::string> violations = cfg.validate();
  if (!violations.empty()) {
    result.status = RunStatus::config_invalid;
    result.errors = violations;
    result.report.status = "invalid config";
    for (const auto& v : violations) log_stage("config: " + v);
    return result;
  }

  RunReport& report = result.report;
  report.config_echo = cfg.echo();
  for (const auto& spec : cfg.layers) {
    LayerReport lr;
    lr.name = spec.name;
    lr.suffix = spec.suffix;
    lr.start_date = spec.start_date;
    lr.end_date = spec.end_date;
    report.layers.push_back(std::move(lr));
  }
  report.seed = cfg.community.seed;
  report.resolution = cfg.community.resolution;

  const std::filesystem::path output_dir = cfg.resolve(cfg.exporter.output_dir);
  const std::size_t threads = effective_threads(cfg.threads);
  StageTimer timer;

  // ingest: every input file, in config order
  std::vector<Document> docs;
  IngestStats stats;
  StopwordSet stops;
  try {
    stops = load_stopwords(cfg);
    for (const auto& input : cfg.inputs) {
      const IngestStats file_stats =
          parse_corpus_file(cfg.resolve(input).string(), cfg.format, cfg.fields,
                            [&docs](Document&& doc) { docs.push_back(std::move(doc)); });
      stats.parsed += file_stats.parsed;
      stats.rejected += file_stats.rejected;
      stats.empty_text += file_stats.empty_text;
    }
  } catch (const IoError& e) {
    result.status = RunStatus::input_unreadable;
    result.errors.push_back(e.what());
    report.status = "input unreadable";
    log_stage(std::string("ingest failed: ") + e.what());
    try_write_report(report, output_dir);
    return result;
  } catch (const ConfigError& e) {
    result.status = RunStatus::config_invalid;
    result.errors.push_back(e.what());
    report.status = "invalid config";
    log_stage(std::string("ingest failed: ") + e.what());
    return result;
  }
  report.documents_parsed = stats.parsed;
  report.documents_rejected = stats.rejected;
  report.documents_empty_text = stats.empty_text;
  report.timings.push_back({"ingest", timer.lap()});
  log_stage("ingest: " + std::to_string(stats.parsed) + " docs from " +
            std::to_string(cfg.inputs.size()) + " file(s), " + std::to_string(stats.rejected) +
            " malformed, " + std::to_string(stats.empty_text) + " empty (" +
            fmt_seconds(report.timings.back().seconds) + "s)");

  // normalize: layer assignment and optional dedupe are sequential (cheap,
  // order-sensitive); tokenization fans out over index batches. Output slots
  // depend only on the document index, so any thread count produces the same
  // token streams.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> filtered;  // (doc index, layer)
  filtered.reserve(docs.size());
  {
    std::unordered_set<std::string> seen;
    for (std::uint32_t i = 0; i < docs.size(); ++i) {
      const auto layer = assign_layer(docs[i].timestamp, cfg.layers);
      if (!layer) {
        ++report.documents_outside_layers;
        continue;
      }
      if (cfg.dedupe_exact_text) {
        std::string key = std::to_string(*layer) + '\x1f' + docs[i].text;
        if (!seen.insert(std::move(key)).second) {
          ++report.documents_duplicates;
          continue;
        }
      }
      ++report.layers[*layer].documents;
      filtered.emplace_back(i, static_cast<std::uint32_t>(*layer));
    }
  }
  report.documents_layered = filtered.size();

  std::vector<std::vector<std::string>> tokens(filtered.size());
  {
    auto tokenize_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        tokens[i] = remove_stopwords(tokenize(docs[filtered[i].first].text), stops);
      }
    };
    const std::size_t batches = (filtered.size() + kTokenizeBatch - 1) / kTokenizeBatch;
    if (threads <= 1 || batches <= 1) {
      tokenize_range(0, filtered.size());
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      const std::size_t workers = std::min(threads, batches);
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= batches) return;
            tokenize_range(b * kTokenizeBatch,
                           std::min((b + 1) * kTokenizeBatch, filtered.size()));
          }
        });
      }
      for (auto& t : pool) t.join();
    }
  }
  report.timings.push_back({"normalize", timer.lap()});
  log_stage("normalize: " + std::to_string(filtered.size()) + " docs layered, " +
            std::to_string(report.documents_outside_layers) + " outside windows, " +
            std::to_string(report.documents_duplicates) + " duplicates, " +
            std::to_string(threads) + " thread(s) (" +
            fmt_seconds(report.timings.back().seconds) + "s)");

  // bigram: single deterministic accumulation pass in document order
  const std::size_t layer_count = cfg.layers.size();
  const auto pillars = cfg.pillar_set();
  std::vector<BigramTable> tables(layer_count);
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    tables[filtered[i].second].add_tokens(tokens[i], cfg.count_mode);
  }
  std::vector<std::vector<std::string>>().swap(tokens);
  std::uint64_t total_tokens = 0;
  for (std::size_t l = 0; l < layer_count; ++l) {
    report.layers[l].vocabulary = tables[l].vocabulary_size();
    total_tokens += tables[l].total_tokens();
  }
  report.timings.push_back({"bigram", timer.lap()});
  log_stage("bigram: " + std::to_string(total_tokens) + " tokens across " +
            std::to_string(layer_count) + " layer(s) (" +
            fmt_seconds(report.timings.back().seconds) + "s)");

  // layergraph: cap to top_k plus pillars, build per-layer edges
  std::vector<LayerGraph> graphs(layer_count);
  for (std::size_t l = 0; l < layer_count; ++l) {
    const auto words = select_top_k(tables[l], cfg.top_k, pillars);
    graphs[l] = build_layer_graph(tables[l], words, pillars, cfg.min_edge_weight);
    graphs[l].layer = l;
    report.layers[l].nodes = graphs[l].nodes.size();
    report.layers[l].edges = graphs[l].edges.size();
  }
  std::vector<BigramTable>().swap(tables);
  report.timings.push_back({"layergraph", timer.lap()});
  for (std::size_t l = 0; l < layer_count; ++l) {
    log_stage("layer " + std::to_string(l) + " (" + cfg.layers[l].name + "): " +
              std::to_string(report.layers[l].nodes) + " nodes, " +
              std::to_string(report.layers[l].edges) + " edges, vocabulary " +
              std::to_string(report.layers[l].vocabulary));
  }

  // multilayer: suffix disambiguation, pillar spine, giant component
  const MultilayerGraph assembled = assemble(graphs, cfg.layers, pillars, cfg.coupling);
  report.assembled_nodes = assembled.nodes.size();
  report.assembled_edges = assembled.edges.size();
  report.assembled_intra_edges = assembled.intra_edge_count();
  report.assembled_inter_edges = assembled.inter_edge_count();
  result.graph = giant_component(assembled);
  report.final_nodes = result.graph.nodes.size();
  report.final_edges = result.graph.edges.size();
  report.final_intra_edges = result.graph.intra_edge_count();
  report.final_inter_edges = result.graph.inter_edge_count();
  report.timings.push_back({"multilayer", timer.lap()});
  log_stage("multilayer: assembled " + std::to_string(report.assembled_nodes) + " nodes / " +
            std::to_string(report.assembled_edges) + " edges; giant component " +
            std::to_string(report.final_nodes) + " nodes / " +
            std::to_string(report.final_edges) + " edges (" +
            fmt_seconds(report.timings.back().seconds) + "s)");

  const bool csv_selected =
      std::find(cfg.exporter.formats.begin(), cfg.exporter.formats.end(), ExportFormat::csv) !=
      cfg.exporter.formats.end();

  if (result.graph.nodes.empty()) {
    result.status = RunStatus::empty_giant_component;
    report.status = report.documents_parsed == 0 ? "empty corpus" : "empty giant component";
    result.errors.push_back("giant component is empty: nothing to export");
    log_stage("giant component is empty; writing report and stopping");
    ExportConfig ecfg = cfg.exporter;
    ecfg.output_dir = output_dir;
    if (csv_selected) {
      try {
        write_csv(result.graph, result.membership, ecfg);
      } catch (const std::exception& e) {
        log_stage(std::string("csv export failed: ") + e.what());
      }
    }
    report.timings.push_back({"total", timer.total()});
    try_write_report(report, output_dir);
    return result;
  }

  // community: Louvain over the giant component, restarts in parallel
  {
    UndirectedGraph g(result.graph.nodes.size());
    for (const SupraEdge& e : result.graph.edges) {
      if (e.kind == EdgeKind::inter && !cfg.community.include_inter_edges) continue;
      g.add_edge(e.source, e.target, static_cast<double>(e.weight));
    }
    const CommunityResult communities = louvain_best(
        g, cfg.community.resolution, cfg.community.seed, cfg.community.n_restarts, threads);
    result.membership = communities.membership;
    report.has_communities = true;
    report.community_count = communities.community_count;
    report.q = communities.q;
    report.resolution = communities.resolution;
    report.seed = communities.seed;
  }
  report.timings.push_back({"community", timer.lap()});
  {
    char qbuf[32];
    std::snprintf(qbuf, sizeof(qbuf), "%.6f", report.q);
    log_stage("community: " + std::to_string(report.community_count) + " communities, q=" +
              qbuf + ", seed " + std::to_string(report.seed) + " (" +
              fmt_seconds(report.timings.back().seconds) + "s)");
  }

  // export
  ExportConfig ecfg = cfg.exporter;
  ecfg.output_dir = output_dir;
  std::string written;
  for (const ExportFormat format : cfg.exporter.formats) {
    try {
      switch (format) {
        case ExportFormat::gexf:
          write_gexf(result.graph, result.membership, cfg.layers, ecfg);
          break;
        case ExportFormat::graphml:
          write_graphml(result.graph, result.membership, cfg.layers, ecfg);
          break;
        case ExportFormat::csv:
          write_csv(result.graph, result.membership, ecfg);
          break;
      }
      if (!written.empty()) written += ',';
      written += to_string(format);
    } catch (const IoError& e) {
      result.status = RunStatus::fatal;
      result.errors.push_back(e.what());
      report.status = "export failed";
      log_stage(std::string("export failed: ") + e.what());
      report.timings.push_back({"total", timer.total()});
      try_write_report(report, output_dir);
      return result;
    }
  }
  report.timings.push_back({"export", timer.lap()});
  report.timings.push_back({"total", timer.total()});
  log_stage("export: wrote " + written + " to " + output_dir.string() + " (" +
            fmt_seconds(report.timings[report.timings.size() - 2].seconds) + "s)");

  try_write_report(report, output_dir);
  return result;
}

}  // namespace strata
