#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace strata {

/// Compact weighted undirected graph for community detection. Nodes are
/// dense indices 0..n-1; no self-loops. Parallel add_edge calls for the
/// same pair accumulate as a multi-edge (weights sum in all computations).
class UndirectedGraph {
 public:
  explicit UndirectedGraph(std::size_t n = 0) : adjacency_(n) {}

  void add_edge(std::uint32_t u, std::uint32_t v, double weight = 1.0);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<std::pair<std::uint32_t, double>>& neighbors(std::uint32_t v) const {
    return adjacency_[v];
  }

  /// Weighted degree of v (sum of incident edge weights).
  double degree(std::uint32_t v) const;

  /// m: total edge weight (each edge counted once).
  double total_weight() const;

 private:
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Weighted Newman-Girvan modularity with a resolution parameter:
///
///   Q = (1/2m) * sum_ij [A_ij - resolution * k_i k_j / (2m)] * delta(c_i, c_j)
///
/// Membership may use arbitrary integer community ids. A graph with zero
/// total weight has Q defined as 0 (degenerate; logged to stderr).
/// resolution = 1 reproduces standard modularity.
double modularity(const UndirectedGraph& g, std::span<const int> membership,
                  double resolution = 1.0);

/// Result of one community-detection run. Community ids are consecutive
/// integers from 0, renumbered by descending community size; `q` is the
/// modularity of `membership` recomputed from scratch on the input graph.
struct CommunityResult {
  std::vector<int> membership;  // by node index
  std::size_t community_count = 0;
  double q = 0.0;
  double resolution = 1.0;
  std::uint64_t seed = 0;
};

/// Louvain method: greedy two-phase modularity maximization. Seeded-shuffle
/// local node moves to a local optimum, then community aggregation, iterated
/// until no move improves Q. Equal-gain moves keep the current community.
/// Deterministic for a fixed (graph, resolution, seed). Throws
/// std::invalid_argument on an empty graph.
CommunityResult louvain(const UndirectedGraph& g, double resolution, std::uint64_t seed);

/// Runs louvain with seeds seed, seed+1, ..., seed+n_restarts-1 (optionally
/// in parallel) and keeps the highest-Q result; ties prefer the lower seed.
CommunityResult louvain_best(const UndirectedGraph& g, double resolution, std::uint64_t seed,
                             std::size_t n_restarts, std::size_t threads = 1);

namespace detail {

/// Visit order for one aggregation level: given (level, node_count), returns
/// a permutation of 0..node_count-1. Exposed so tests can inject orders.
using VisitOrder = std::function<std::vector<std::uint32_t>(std::size_t, std::size_t)>;

CommunityResult louvain_with_order(const UndirectedGraph& g, double resolution,
                                   const VisitOrder& order);

/// Deterministic Fisher-Yates permutation of 0..n-1 (independent of any
/// standard-library distribution implementation).
std::vector<std::uint32_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace detail

}  // namespace strata
