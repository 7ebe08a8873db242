#include "strata/document.hpp"

#include <algorithm>

namespace strata {

std::optional<LayerSpec> make_layer(std::size_t index, std::string name,
                                    const std::string& start_date,
                                    const std::string& end_date,
                                    std::string suffix) {
  auto s = parse_date(start_date);
  auto e = parse_date(end_date);
  if (!s || !e) return std::nullopt;
  LayerSpec spec;
  spec.index = index;
  spec.name = std::move(name);
  spec.start_date = start_date;
  spec.end_date = end_date;
  spec.start = *s;
  spec.end = *e + kSecondsPerDay - 1;
  spec.suffix = std::move(suffix);
  return spec;
}

std::vector<std::string> validate_layers(const std::vector<LayerSpec>& layers) {
  std::vector<std::string> violations;
  for (const auto& l : layers) {
    if (l.name.empty()) {
      violations.push_back("layer " + std::to_string(l.index) + ": name must be non-empty");
    }
    if (l.start > l.end) {
      violations.push_back("layer " + std::to_string(l.index) + " (" + l.name +
                           "): start " + l.start_date + " is after end " + l.end_date);
    }
  }
  for (std::size_t i = 1; i < layers.size(); ++i) {
    const auto& prev = layers[i - 1];
    const auto& cur = layers[i];
    if (cur.start < prev.start) {
      violations.push_back("layers must be sorted by start date: layer " +
                           std::to_string(cur.index) + " (" + cur.name +
                           ") starts before layer " + std::to_string(prev.index) + " (" +
                           prev.name + ")");
    } else if (cur.start <= prev.end) {
      violations.push_back("layer windows overlap: layer " + std::to_string(prev.index) +
                           " (" + prev.name + ", " + prev.start_date + ".." + prev.end_date +
                           ") and layer " + std::to_string(cur.index) + " (" + cur.name +
                           ", " + cur.start_date + ".." + cur.end_date + ")");
    }
  }
  std::size_t empty_count = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].suffix.empty()) ++empty_count;
    for (std::size_t j = i + 1; j < layers.size(); ++j) {
      if (!layers[i].suffix.empty() && layers[i].suffix == layers[j].suffix) {
        violations.push_back("duplicate suffix \"" + layers[i].suffix + "\" on layer " +
                             std::to_string(layers[i].index) + " (" + layers[i].name +
                             ") and layer " + std::to_string(layers[j].index) + " (" +
                             layers[j].name + ")");
      }
    }
  }
  if (empty_count > 1) {
    violations.push_back("at most one layer may have the empty suffix; found " +
                         std::to_string(empty_count));
  }
  return violations;
}

std::optional<std::size_t> assign_layer(EpochSeconds ts, const std::vector<LayerSpec>& layers) {
  auto it = std::upper_bound(layers.begin(), layers.end(), ts,
                             [](EpochSeconds t, const LayerSpec& l) { return t < l.start; });
  if (it == layers.begin()) return std::nullopt;
  const auto& candidate = *std::prev(it);
  if (ts <= candidate.end) return candidate.index;
  return std::nullopt;
}

std::optional<std::string> default_layer_suffix(std::size_t index) {
  switch (index) {
    case 0: return std::string{};
    case 1: return std::string{"^"};
    case 2: return std::string{"*"};
    case 3: return std::string{"†"};
    case 4: return std::string{"‡"};
    default: return std::nullopt;
  }
}

}  // namespace strata
