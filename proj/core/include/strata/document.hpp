#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strata/timestamp.hpp"

namespace strata {

/// One timestamped text unit (typically a tweet). `text` is guaranteed
/// non-empty by the ingest path; empty-text records are tallied and dropped.
struct Document {
  std::string id;
  std::string text;
  EpochSeconds timestamp = 0;
};

/// A named time window plus the node-id suffix used for this layer.
/// `start` is the first second of the start date, `end` the last second
/// of the end date (both inclusive).
struct LayerSpec {
  std::size_t index = 0;
  std::string name;
  std::string start_date;  // "YYYY-MM-DD", kept for report echo
  std::string end_date;
  EpochSeconds start = 0;
  EpochSeconds end = 0;
  std::string suffix;
};

/// Builds a LayerSpec from civil dates; nullopt if a date does not parse.
std::optional<LayerSpec> make_layer(std::size_t index, std::string name,
                                    const std::string& start_date,
                                    const std::string& end_date,
                                    std::string suffix);

/// Checks the LayerSpec list invariants: per-layer start <= end, windows
/// sorted by start and pairwise non-overlapping, suffixes pairwise distinct
/// with at most one empty. Returns one message per violation.
std::vector<std::string> validate_layers(const std::vector<LayerSpec>& layers);

/// Index of the unique layer whose window contains `ts`, or nullopt when no
/// window does. Layers must satisfy validate_layers.
std::optional<std::size_t> assign_layer(EpochSeconds ts, const std::vector<LayerSpec>& layers);

/// Default suffix for layer `index` ("", "^", "*", "†", "‡"); nullopt
/// past the fifth layer, where configs must spell suffixes out.
std::optional<std::string> default_layer_suffix(std::size_t index);

}  // namespace strata
