#include "support/oracles.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace oracle {

WordCount naive_unigrams(const std::vector<std::vector<std::string>>& docs, bool per_document) {
  WordCount counts;
  for (const auto& doc : docs) {
    if (per_document) {
      std::set<std::string> seen(doc.begin(), doc.end());
      for (const auto& w : seen) ++counts[w];
    } else {
      for (const auto& w : doc) ++counts[w];
    }
  }
  return counts;
}

PairCount naive_bigrams(const std::vector<std::vector<std::string>>& docs, bool per_document) {
  PairCount counts;
  for (const auto& doc : docs) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i + 1 < doc.size(); ++i) {
      if (doc[i] == doc[i + 1]) continue;
      std::pair<std::string, std::string> key{doc[i], doc[i + 1]};
      if (per_document) {
        seen.insert(key);
      } else {
        ++counts[key];
      }
    }
    for (const auto& key : seen) ++counts[key];
  }
  return counts;
}

std::set<std::string> naive_top_k(const std::vector<std::pair<std::string, std::uint64_t>>& counts,
                                  std::size_t k, const std::set<std::string>& pillars) {
  auto ranked = counts;
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  std::set<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.insert(ranked[i].first);
  for (const auto& [word, count] : counts) {
    (void)count;
    if (pillars.contains(word)) out.insert(word);
  }
  return out;
}

PairCount naive_layer_edges(const PairCount& bigrams, const std::set<std::string>& nodes,
                            std::uint64_t min_weight) {
  PairCount acc;
  for (const auto& [pair, count] : bigrams) {
    if (!nodes.contains(pair.first) || !nodes.contains(pair.second)) continue;
    acc[{std::min(pair.first, pair.second), std::max(pair.first, pair.second)}] += count;
  }
  PairCount out;
  for (const auto& [pair, weight] : acc) {
    if (weight >= min_weight) out[pair] = weight;
  }
  return out;
}

std::vector<int> component_labels(
    std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    std::queue<std::uint32_t> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      std::uint32_t v = frontier.front();
      frontier.pop();
      for (std::uint32_t u : adj[v]) {
        if (label[u] < 0) {
          label[u] = next;
          frontier.push(u);
        }
      }
    }
    ++next;
  }
  return label;
}

std::set<std::string> giant_component_ids(const strata::MultilayerGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(e.source, e.target);
  const std::vector<int> label = component_labels(g.nodes.size(), edges);

  const int components = g.nodes.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> size(components, 0);
  std::vector<const std::string*> min_id(components, nullptr);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    ++size[label[i]];
    const std::string*& m = min_id[label[i]];
    if (m == nullptr || g.nodes[i].id < *m) m = &g.nodes[i].id;
  }
  int best = -1;
  for (int c = 0; c < components; ++c) {
    if (best < 0 || size[c] > size[best] ||
        (size[c] == size[best] && *min_id[c] < *min_id[best])) {
      best = c;
    }
  }
  std::set<std::string> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (label[i] == best) out.insert(g.nodes[i].id);
  }
  return out;
}

DenseGraph::DenseGraph(const strata::UndirectedGraph& g) : n(g.size()) {
  a.assign(n, std::vector<long double>(n, 0.0L));
  k.assign(n, 0.0L);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : g.neighbors(v)) {
      a[v][u] += w;  // both directions appear in the adjacency lists
      k[v] += w;
    }
    m2 += k[v];
  }
}

long double DenseGraph::q(std::span<const int> membership, double resolution) const {
  if (m2 <= 0) return 0.0L;
  long double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (membership[i] != membership[j]) continue;
      sum += a[i][j] - static_cast<long double>(resolution) * k[i] * k[j] / m2;
    }
  }
  return sum / m2;
}

std::string local_move_violation(const strata::UndirectedGraph& g, std::span<const int> membership,
                                 double resolution) {
  const DenseGraph d(g);
  std::vector<int> trial(membership.begin(), membership.end());
  const long double base = d.q(trial, resolution);
  const int fresh = *std::max_element(trial.begin(), trial.end()) + 1;

  for (std::uint32_t v = 0; v < g.size(); ++v) {
    std::set<int> targets;
    for (const auto& [u, w] : g.neighbors(v)) {
      (void)w;
      targets.insert(membership[u]);
    }
    targets.insert(fresh);  // isolating v must not help either
    const int original = trial[v];
    for (const int c : targets) {
      if (c == original) continue;
      trial[v] = c;
      const long double moved = d.q(trial, resolution);
      if (moved > base + 1e-9L) {
        std::ostringstream msg;
        msg << "moving node " << v << " from community " << original << " to " << c
            << " raises Q by " << static_cast<double>(moved - base);
        return msg.str();
      }
    }
    trial[v] = original;
  }
  return {};
}

namespace {

/// Shared precomputation for the exact optimizers: per-block quality
///   q(B) = w_in(B)/m - resolution * (deg(B)/2m)^2
/// so that Q(partition) = sum of q over its blocks.
struct BlockScorer {
  DenseGraph d;
  long double m;
  double resolution;

  BlockScorer(const strata::UndirectedGraph& g, double res)
      : d(g), m(d.m2 / 2.0L), resolution(res) {
    if (m <= 0) throw std::invalid_argument("best_partition: graph has no edge weight");
  }
};

}  // namespace

PartitionResult best_partition_dp(const strata::UndirectedGraph& g, double resolution) {
  const std::size_t n = g.size();
  if (n == 0 || n > 18) throw std::invalid_argument("best_partition_dp: need 1..18 nodes");
  const BlockScorer s(g, resolution);
  const std::uint32_t full = (n == 32) ? 0xFFFFFFFFu : ((1u << n) - 1u);

  // w_in[S] and deg[S] by peeling the lowest set bit.
  std::vector<long double> w_in(full + 1, 0.0L), deg(full + 1, 0.0L);
  for (std::uint32_t set = 1; set <= full; ++set) {
    const std::uint32_t v = static_cast<std::uint32_t>(__builtin_ctz(set));
    const std::uint32_t rest = set & (set - 1);
    long double to_rest = 0;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      to_rest += s.d.a[v][static_cast<std::uint32_t>(__builtin_ctz(r))];
    }
    w_in[set] = w_in[rest] + to_rest;
    deg[set] = deg[rest] + s.d.k[v];
  }

  auto block_q = [&](std::uint32_t set) {
    const long double frac = deg[set] / s.d.m2;
    return w_in[set] / s.m - static_cast<long double>(s.resolution) * frac * frac;
  };

  // best[S]: optimal Q over partitions of S; the block containing S's lowest
  // bit is enumerated explicitly, the remainder is a subproblem.
  std::vector<long double> best(full + 1, 0.0L);
  std::vector<std::uint32_t> choice(full + 1, 0);
  for (std::uint32_t set = 1; set <= full; ++set) {
    const std::uint32_t low = set & (set ^ (set - 1));  // lowest set bit
    const std::uint32_t rest = set ^ low;
    long double top = -1e30L;
    std::uint32_t top_block = low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t block = sub | low;
      const long double cand = block_q(block) + best[set ^ block];
      if (cand > top) {
        top = cand;
        top_block = block;
      }
      if (sub == 0) break;
    }
    best[set] = top;
    choice[set] = top_block;
  }

  PartitionResult result;
  result.q = best[full];
  result.membership.assign(n, -1);
  int label = 0;
  for (std::uint32_t set = full; set;) {
    const std::uint32_t block = choice[set];
    for (std::uint32_t b = block; b; b &= b - 1) {
      result.membership[static_cast<std::uint32_t>(__builtin_ctz(b))] = label;
    }
    ++label;
    set ^= block;
  }
  return result;
}

PartitionResult best_partition_enum(const strata::UndirectedGraph& g, double resolution) {
  const std::size_t n = g.size();
  if (n == 0 || n > 10) throw std::invalid_argument("best_partition_enum: need 1..10 nodes");
  const BlockScorer s(g, resolution);

  PartitionResult result;
  result.q = -1e30L;
  std::vector<int> labels(n, 0);

  // Restricted-growth strings enumerate every set partition exactly once.
  auto walk = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == n) {
      const long double q = s.d.q(labels, resolution);
      if (q > result.q) {
        result.q = q;
        result.membership = labels;
      }
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[i] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  walk(walk, 0, 0);
  return result;
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, rev;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [f, fnew] = fwd.try_emplace(a[i], b[i]);
    if (!fnew && f->second != b[i]) return false;
    auto [r, rnew] = rev.try_emplace(b[i], a[i]);
    if (!rnew && r->second != a[i]) return false;
  }
  return true;
}

strata::UndirectedGraph two_triangles_bridge() {
  strata::UndirectedGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(3, 5);
  g.add_edge(4, 5);
  g.add_edge(2, 3);
  return g;
}

strata::UndirectedGraph complete_graph(std::size_t n) {
  strata::UndirectedGraph g(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

strata::UndirectedGraph clique_ring(std::size_t cliques, std::size_t size) {
  strata::UndirectedGraph g(cliques * size);
  for (std::uint32_t c = 0; c < cliques; ++c) {
    const std::uint32_t base = c * static_cast<std::uint32_t>(size);
    for (std::uint32_t i = 0; i < size; ++i) {
      for (std::uint32_t j = i + 1; j < size; ++j) g.add_edge(base + i, base + j);
    }
    const std::uint32_t next_base = ((c + 1) % cliques) * static_cast<std::uint32_t>(size);
    g.add_edge(base, next_base + (size > 1 ? 1 : 0));
  }
  return g;
}

std::vector<int> clique_ring_partition(std::size_t cliques, std::size_t size) {
  std::vector<int> membership(cliques * size);
  for (std::size_t v = 0; v < membership.size(); ++v) membership[v] = static_cast<int>(v / size);
  return membership;
}

strata::UndirectedGraph random_connected_graph(support::Rng& rng, std::size_t n,
                                               double extra_edges_per_node, bool integer_weights) {
  strata::UndirectedGraph g(n);
  auto weight = [&] {
    return integer_weights ? static_cast<double>(rng.between(1, 9)) : rng.unit() * 10.0 + 1e-3;
  };
  for (std::uint32_t v = 1; v < n; ++v) {
    g.add_edge(v, static_cast<std::uint32_t>(rng.below(v)), weight());
  }
  const std::size_t extra = static_cast<std::size_t>(extra_edges_per_node * static_cast<double>(n));
  for (std::size_t e = 0; e < extra && n >= 2; ++e) {
    const auto u = static_cast<std::uint32_t>(rng.below(n));
    const auto v = static_cast<std::uint32_t>(rng.below(n));
    if (u != v) g.add_edge(u, v, weight());
  }
  return g;
}

strata::MultilayerGraph random_multilayer(support::Rng& rng, std::size_t n,
                                          double edges_per_node) {
  strata::MultilayerGraph g;
  g.nodes.resize(n);
  std::vector<std::uint32_t> ids(n);
  for (std::uint32_t i = 0; i < n; ++i) ids[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.nodes[i].id = "node" + std::to_string(ids[i]);
    g.nodes[i].base_word = g.nodes[i].id;
    g.nodes[i].layer = 0;
    g.nodes[i].weight = 1 + rng.below(9);
  }
  const std::size_t edges = static_cast<std::size_t>(edges_per_node * static_cast<double>(n));
  for (std::size_t e = 0; e < edges && n >= 2; ++e) {
    auto u = static_cast<std::uint32_t>(rng.below(n));
    auto v = static_cast<std::uint32_t>(rng.below(n));
    if (u == v) continue;
    g.edges.push_back(
        {std::min(u, v), std::max(u, v), 1 + rng.below(5), strata::EdgeKind::intra});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& x, const auto& y) {
    if (x.source != y.source) return x.source < y.source;
    return x.target < y.target;
  });
  return g;
}

}  // namespace oracle
