#include "strata/multilayer.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "strata/errors.hpp"

namespace strata {

std::optional<Coupling> coupling_from_string(std::string_view s) {
  if (s == "consecutive") return Coupling::consecutive;
  if (s == "all_pairs") return Coupling::all_pairs;
  return std::nullopt;
}

std::string_view to_string(Coupling c) {
  return c == Coupling::consecutive ? "consecutive" : "all_pairs";
}

std::size_t MultilayerGraph::intra_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(),
                    [](const SupraEdge& e) { return e.kind == EdgeKind::intra; }));
}

std::size_t MultilayerGraph::inter_edge_count() const {
  return edges.size() - intra_edge_count();
}

std::optional<std::uint32_t> MultilayerGraph::find_node(std::string_view id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const SupraNode& n, std::string_view v) { return n.id < v; });
  if (it == nodes.end() || it->id != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes.begin());
}

MultilayerGraph assemble(std::span<const LayerGraph> graphs, std::span<const LayerSpec> layers,
                         const std::unordered_set<std::string>& pillars, Coupling coupling) {
  if (graphs.size() != layers.size()) {
    throw ConfigError("assemble: expected one layer graph per layer spec");
  }

  MultilayerGraph g;
  std::size_t total_nodes = 0;
  for (const auto& lg : graphs) total_nodes += lg.nodes.size();
  g.nodes.reserve(total_nodes);

  for (std::size_t li = 0; li < graphs.size(); ++li) {
    const std::string& suffix = layers[li].suffix;
    for (const auto& node : graphs[li].nodes) {
      SupraNode sn;
      sn.id = node.word + suffix;
      sn.base_word = node.word;
      sn.layer = li;
      sn.weight = node.weight;
      sn.is_pillar = node.is_pillar;
      g.nodes.push_back(std::move(sn));
    }
  }

  std::sort(g.nodes.begin(), g.nodes.end(),
            [](const SupraNode& a, const SupraNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    if (g.nodes[i].id == g.nodes[i - 1].id) {
      throw ConfigError("assemble: duplicate suffixed node id \"" + g.nodes[i].id + "\"");
    }
  }

  std::unordered_map<std::string_view, std::uint32_t> index;
  index.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    index.emplace(g.nodes[i].id, static_cast<std::uint32_t>(i));
  }

  for (std::size_t li = 0; li < graphs.size(); ++li) {
    const std::string& suffix = layers[li].suffix;
    for (const auto& e : graphs[li].edges) {
      std::uint32_t u = index.at(graphs[li].nodes[e.a].word + suffix);
      std::uint32_t v = index.at(graphs[li].nodes[e.b].word + suffix);
      g.edges.push_back({std::min(u, v), std::max(u, v), e.weight, EdgeKind::intra});
    }
  }

  // Pillar spine: per pillar word, join instances across qualifying layer
  // pairs. A pillar absent from a layer simply yields no edge for pairs
  // involving that layer.
  for (const auto& pillar : pillars) {
    std::vector<std::pair<std::size_t, std::uint32_t>> instances;  // (layer, node index)
    for (std::size_t li = 0; li < layers.size(); ++li) {
      auto it = index.find(pillar + layers[li].suffix);
      if (it == index.end()) continue;
      if (g.nodes[it->second].layer == li && g.nodes[it->second].base_word == pillar) {
        instances.emplace_back(li, it->second);
      }
    }
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (std::size_t j = i + 1; j < instances.size(); ++j) {
        if (coupling == Coupling::consecutive &&
            instances[j].first != instances[i].first + 1) {
          continue;
        }
        std::uint32_t u = instances[i].second;
        std::uint32_t v = instances[j].second;
        g.edges.push_back({std::min(u, v), std::max(u, v), 1, EdgeKind::inter});
      }
    }
  }

  std::sort(g.edges.begin(), g.edges.end(), [](const SupraEdge& a, const SupraEdge& b) {
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  return g;
}

MultilayerGraph giant_component(const MultilayerGraph& g) {
  if (g.nodes.empty()) return {};

  std::vector<std::vector<std::uint32_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }

  constexpr std::uint32_t kUnvisited = 0xFFFFFFFFu;
  std::vector<std::uint32_t> component(g.nodes.size(), kUnvisited);
  std::vector<std::size_t> component_size;
  std::vector<std::uint32_t> stack;

  for (std::uint32_t start = 0; start < g.nodes.size(); ++start) {
    if (component[start] != kUnvisited) continue;
    auto label = static_cast<std::uint32_t>(component_size.size());
    std::size_t size = 0;
    stack.push_back(start);
    component[start] = label;
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t w : adj[v]) {
        if (component[w] == kUnvisited) {
          component[w] = label;
          stack.push_back(w);
        }
      }
    }
    component_size.push_back(size);
  }

  // Ties on size go to the component holding the smallest node id.
  std::vector<const std::string*> min_id(component_size.size(), nullptr);
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
    const std::string*& m = min_id[component[i]];
    if (m == nullptr || g.nodes[i].id < *m) m = &g.nodes[i].id;
  }
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < component_size.size(); ++c) {
    if (component_size[c] > component_size[best] ||
        (component_size[c] == component_size[best] && *min_id[c] < *min_id[best])) {
      best = c;
    }
  }

  MultilayerGraph out;
  out.nodes.reserve(component_size[best]);
  std::vector<std::uint32_t> remap(g.nodes.size(), kUnvisited);
  for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
    if (component[i] == best) {
      remap[i] = static_cast<std::uint32_t>(out.nodes.size());
      out.nodes.push_back(g.nodes[i]);
    }
  }
  for (const auto& e : g.edges) {
    if (component[e.source] == best) {
      out.edges.push_back({remap[e.source], remap[e.target], e.weight, e.kind});
    }
  }
  return out;
}

}  // namespace strata
