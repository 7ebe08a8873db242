#pragma once

#include <string>
#include <vector>

#include "strata/community.hpp"
#include "strata/config.hpp"
#include "strata/export.hpp"
#include "strata/multilayer.hpp"

namespace strata {

/// Values double as process exit codes.
enum class RunStatus {
  ok = 0,
  fatal = 1,  // unexpected I/O failure (e.g. unwritable output)
  config_invalid = 2,
  input_unreadable = 3,
  empty_giant_component = 4,
};

struct RunResult {
  RunStatus status = RunStatus::ok;
  RunReport report;
  MultilayerGraph graph;        // final giant component
  std::vector<int> membership;  // community per graph.nodes index
  std::vector<std::string> errors;
};

/// Runs the full pipeline: ingest, normalize, bigram counting, per-layer
/// graphs, multilayer assembly with giant-component filtering, community
/// detection, export. Stage progress goes to stderr; all machine output goes
/// to files under the resolved export.output_dir. The report file is written
/// on every path that gets past config validation, including failures.
/// Never throws for the failure modes encoded in RunStatus.
RunResult run_pipeline(const PipelineConfig& config);

}  // namespace strata
