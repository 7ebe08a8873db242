#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "strata/bigram.hpp"

namespace strata {

struct LayerNode {
  std::string word;
  std::uint64_t weight = 0;  // unigram count
  bool is_pillar = false;
};

/// Endpoints are indices into LayerGraph::nodes with a < b.
struct LayerEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint64_t weight = 0;  // symmetrized bigram count
};

/// One layer's word graph. Nodes are sorted by word; edges are canonical
/// (a < b) and sorted by (a, b).
struct LayerGraph {
  std::size_t layer = 0;
  std::vector<LayerNode> nodes;
  std::vector<LayerEdge> edges;
};

/// The k highest-count words (ties broken by lexicographically smaller
/// word), plus any pillar word present in `counts` that did not make the
/// cut. Result size <= k + |pillars|. Returned sorted by word.
std::vector<std::string> select_top_k(
    std::span<const std::pair<std::string, std::uint64_t>> counts, std::size_t k,
    const std::unordered_set<std::string>& pillars);

/// Convenience over a table's unigrams.
std::vector<std::string> select_top_k(const BigramTable& table, std::size_t k,
                                      const std::unordered_set<std::string>& pillars);

/// Induced weighted graph on `node_words`: an edge {w1,w2} exists when the
/// symmetrized bigram count is positive and >= min_edge_weight. Node weight
/// is the unigram count. Zero-degree nodes are retained; global pruning
/// happens at the giant-component step.
LayerGraph build_layer_graph(const BigramTable& table, std::span<const std::string> node_words,
                             const std::unordered_set<std::string>& pillars,
                             std::uint64_t min_edge_weight = 1);

/// Per-layer debug edge list: "word1,word2,weight" rows sorted by (a, b).
void write_edge_csv(const LayerGraph& graph, std::ostream& out);

}  // namespace strata
