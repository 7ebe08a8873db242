#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/document.hpp"
#include "strata/multilayer.hpp"

namespace strata {

enum class ExportFormat { gexf, graphml, csv };

std::optional<ExportFormat> export_format_from_string(std::string_view s);
std::string_view to_string(ExportFormat f);

struct ExportConfig {
  std::vector<ExportFormat> formats{ExportFormat::gexf, ExportFormat::csv};
  double layer_spacing = 100.0;  // z-distance between layers
  bool include_positions = true;
  std::filesystem::path output_dir = ".";
};

/// Per-layer accounting for the run report.
struct LayerReport {
  std::string name;
  std::string suffix;
  std::string start_date;
  std::string end_date;
  std::uint64_t documents = 0;   // documents assigned to the layer
  std::uint64_t vocabulary = 0;  // distinct words after normalization
  std::uint64_t nodes = 0;       // layer graph size before assembly
  std::uint64_t edges = 0;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

/// Full accounting of one pipeline run. Final counts must equal the exported
/// graph's actual counts; the report writer never recomputes anything.
struct RunReport {
  std::string status = "ok";
  std::uint64_t documents_parsed = 0;
  std::uint64_t documents_rejected = 0;
  std::uint64_t documents_empty_text = 0;
  std::uint64_t documents_outside_layers = 0;
  std::uint64_t documents_duplicates = 0;
  std::uint64_t documents_layered = 0;
  std::vector<LayerReport> layers;
  std::uint64_t assembled_nodes = 0;
  std::uint64_t assembled_edges = 0;
  std::uint64_t assembled_intra_edges = 0;
  std::uint64_t assembled_inter_edges = 0;
  std::uint64_t final_nodes = 0;
  std::uint64_t final_edges = 0;
  std::uint64_t final_intra_edges = 0;
  std::uint64_t final_inter_edges = 0;
  bool has_communities = false;  // false omits the modularity block entirely
  std::uint64_t community_count = 0;
  double q = 0.0;
  double resolution = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<StageTiming> timings;
};

/// Writes graph.gexf (GEXF 1.3, UTF-8). Node attributes: base_word, layer,
/// layer_name, is_pillar, community, weight; viz positions put each layer on
/// its own z-plane as a circle of radius proportional to sqrt(layer size),
/// nodes ordered by id. Edge weight uses the native GEXF attribute; kind is
/// an edge attvalue. membership is indexed like g.nodes.
/// Throws std::invalid_argument on an empty graph or mismatched membership,
/// IoError when the file cannot be written.
void write_gexf(const MultilayerGraph& g, std::span<const int> membership,
                std::span<const LayerSpec> layers, const ExportConfig& cfg);

/// Writes graph.graphml with the same node/edge attributes as write_gexf,
/// minus viz positions (GraphML has no standard viz namespace).
void write_graphml(const MultilayerGraph& g, std::span<const int> membership,
                   std::span<const LayerSpec> layers, const ExportConfig& cfg);

/// Writes nodes.csv (id,base_word,layer,weight,is_pillar,community) and
/// edges.csv (source,target,weight,kind), RFC-4180, rows sorted by id and
/// (source,target). An empty graph yields header-only files.
void write_csv(const MultilayerGraph& g, std::span<const int> membership,
               const ExportConfig& cfg);

/// Renders the report as "key: value" lines ('#' lines are comments).
/// has_communities=false drops the modularity.* lines, matching a run that
/// never reached community detection.
std::string render_report(const RunReport& report);

void write_report(const RunReport& report, const std::filesystem::path& path);

}  // namespace strata
