#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "strata/document.hpp"
#include "strata/layer_graph.hpp"

namespace strata {

/// How pillar instances are joined across layers.
enum class Coupling {
  consecutive,  // layer i to layer i+1 only
  all_pairs,    // every layer pair where the pillar exists in both
};

std::optional<Coupling> coupling_from_string(std::string_view s);
std::string_view to_string(Coupling c);

/// One word instance inside one layer of the supra-graph.
/// id = base_word + layer suffix; ids are globally unique.
struct SupraNode {
  std::string id;
  std::string base_word;
  std::size_t layer = 0;
  std::uint64_t weight = 0;
  bool is_pillar = false;
};

enum class EdgeKind { intra, inter };

/// Endpoints are indices into MultilayerGraph::nodes with source < target.
struct SupraEdge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::uint64_t weight = 1;
  EdgeKind kind = EdgeKind::intra;
};

/// The assembled supra-graph: all layers' suffix-disambiguated nodes,
/// weighted intra-layer edges, and unit-weight pillar inter-layer edges.
/// Nodes are sorted by id; edges are sorted by (source, target).
struct MultilayerGraph {
  std::vector<SupraNode> nodes;
  std::vector<SupraEdge> edges;

  std::size_t intra_edge_count() const;
  std::size_t inter_edge_count() const;
  std::optional<std::uint32_t> find_node(std::string_view id) const;
};

/// Disambiguates per-layer node ids with each layer's suffix and adds
/// pillar inter-layer edges. One LayerGraph per LayerSpec, matching
/// indices. Total node count equals the sum of per-layer node counts;
/// a duplicate suffixed id raises ConfigError (possible only when layer
/// suffixes were not validated).
MultilayerGraph assemble(std::span<const LayerGraph> graphs, std::span<const LayerSpec> layers,
                         const std::unordered_set<std::string>& pillars, Coupling coupling);

/// The induced subgraph on the largest connected component, using intra and
/// inter edges together. Size ties break toward the component containing
/// the lexicographically smallest node id. Empty input yields empty output.
MultilayerGraph giant_component(const MultilayerGraph& g);

}  // namespace strata
