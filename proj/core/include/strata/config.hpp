#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "strata/bigram.hpp"
#include "strata/document.hpp"
#include "strata/export.hpp"
#include "strata/ingest.hpp"
#include "strata/multilayer.hpp"

namespace strata {

struct StopwordConfig {
  std::string source = "builtin:en";  // "builtin:en", "none", or a file path
  std::vector<std::string> extra{"fifaworldcup", "qatar2022"};  // corpus query hashtags
  bool replace = false;  // extra words replace the source list instead of extending it
};

struct CommunityConfig {
  double resolution = 1.0;
  std::uint64_t seed = 42;
  std::size_t n_restarts = 1;
  bool include_inter_edges = true;  // inter-layer edges participate in modularity
};

/// Everything a pipeline run needs, loaded from one JSON config file.
/// Relative paths inside the file resolve against the file's directory.
struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  CorpusFormat format = CorpusFormat::jsonl;
  FieldMapping fields;
  std::vector<LayerSpec> layers;
  std::size_t top_k = 300;
  std::vector<std::string> pillars{"world", "fifa", "team"};
  Coupling coupling = Coupling::consecutive;
  std::uint64_t min_edge_weight = 1;
  CountMode count_mode = CountMode::tokens;
  StopwordConfig stopwords;
  bool dedupe_exact_text = false;
  CommunityConfig community;
  std::size_t threads = 0;  // 0 = one worker per hardware thread
  ExportConfig exporter;
  std::filesystem::path base_dir = ".";

  /// Pure check of every config invariant; each violation names the
  /// offending field. Empty result = valid.
  std::vector<std::string> validate() const;

  /// Key/value pairs for the run report's config echo.
  std::vector<std::pair<std::string, std::string>> echo() const;

  /// Pillar words case-folded the same way tokens are.
  std::unordered_set<std::string> pillar_set() const;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Parses a config file. Structural problems (unreadable file, malformed
/// JSON, wrong value types, unknown keys, undecodable dates) throw
/// ConfigError naming the key; semantic violations are left to validate().
PipelineConfig load_config(const std::filesystem::path& path);

/// Same parser over an in-memory JSON string.
PipelineConfig load_config_from_string(const std::string& text,
                                       const std::filesystem::path& base_dir);

/// threads == 0 resolves to the hardware thread count (at least 1).
std::size_t effective_threads(std::size_t configured);

}  // namespace strata
