#include "strata/layer_graph.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "strata/csv_util.hpp"

namespace strata {

std::vector<std::string> select_top_k(
    std::span<const std::pair<std::string, std::uint64_t>> counts, std::size_t k,
    const std::unordered_set<std::string>& pillars) {
  std::vector<const std::pair<std::string, std::uint64_t>*> ranked;
  ranked.reserve(counts.size());
  for (const auto& entry : counts) ranked.push_back(&entry);

  auto by_rank = [](const auto* x, const auto* y) {
    if (x->second != y->second) return x->second > y->second;
    return x->first < y->first;
  };
  std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), by_rank);

  std::vector<std::string> selected;
  selected.reserve(take + pillars.size());
  std::unordered_set<std::string_view> chosen;
  for (std::size_t i = 0; i < take; ++i) {
    selected.push_back(ranked[i]->first);
    chosen.insert(ranked[i]->first);
  }
  // Pillar force-inclusion: a pillar occurring anywhere in the layer joins
  // the node set even when it misses the top k.
  for (const auto& entry : counts) {
    if (pillars.contains(entry.first) && !chosen.contains(entry.first)) {
      selected.push_back(entry.first);
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

std::vector<std::string> select_top_k(const BigramTable& table, std::size_t k,
                                      const std::unordered_set<std::string>& pillars) {
  auto counts = table.unigrams();
  return select_top_k(counts, k, pillars);
}

LayerGraph build_layer_graph(const BigramTable& table, std::span<const std::string> node_words,
                             const std::unordered_set<std::string>& pillars,
                             std::uint64_t min_edge_weight) {
  LayerGraph graph;
  graph.layer = table.layer();

  std::vector<std::string> sorted_words(node_words.begin(), node_words.end());
  std::sort(sorted_words.begin(), sorted_words.end());

  std::unordered_map<std::string_view, std::uint32_t> index;
  graph.nodes.reserve(sorted_words.size());
  for (auto& word : sorted_words) {
    LayerNode node;
    node.word = word;
    node.weight = table.unigram_count(word);
    node.is_pillar = pillars.contains(word);
    const LayerNode& stored = graph.nodes.emplace_back(std::move(node));
    index.emplace(stored.word, static_cast<std::uint32_t>(graph.nodes.size() - 1));
  }

  // Symmetrize ordered bigram counts into canonical (a < b) edges.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> weights;
  for (const auto& [w1, w2, count] : table.bigrams()) {
    auto it1 = index.find(w1);
    auto it2 = index.find(w2);
    if (it1 == index.end() || it2 == index.end()) continue;
    auto a = std::min(it1->second, it2->second);
    auto b = std::max(it1->second, it2->second);
    weights[{a, b}] += count;
  }
  graph.edges.reserve(weights.size());
  for (const auto& [key, weight] : weights) {
    if (weight < min_edge_weight) continue;
    graph.edges.push_back({key.first, key.second, weight});
  }
  return graph;
}

void write_edge_csv(const LayerGraph& graph, std::ostream& out) {
  out << "word1,word2,weight\n";
  for (const auto& e : graph.edges) {
    put_csv_field(out, graph.nodes[e.a].word);
    out << ',';
    put_csv_field(out, graph.nodes[e.b].word);
    out << ',' << e.weight << '\n';
  }
}

}  // namespace strata
