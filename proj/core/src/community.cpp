#include "strata/community.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

namespace strata {

void UndirectedGraph::add_edge(std::uint32_t u, std::uint32_t v, double weight) {
  if (u == v) throw std::invalid_argument("add_edge: self-loops are not supported");
  if (u >= adjacency_.size() || v >= adjacency_.size())
    throw std::out_of_range("add_edge: node index out of range");
  adjacency_[u].emplace_back(v, weight);
  adjacency_[v].emplace_back(u, weight);
  ++edge_count_;
}

double UndirectedGraph::degree(std::uint32_t v) const {
  long double d = 0;
  for (const auto& [u, w] : adjacency_[v]) {
    (void)u;
    d += w;
  }
  return static_cast<double>(d);
}

double UndirectedGraph::total_weight() const {
  long double m2 = 0;
  for (std::uint32_t v = 0; v < adjacency_.size(); ++v) m2 += degree(v);
  return static_cast<double>(m2 / 2.0L);
}

double modularity(const UndirectedGraph& g, std::span<const int> membership, double resolution) {
  if (membership.size() != g.size())
    throw std::invalid_argument("modularity: membership size does not match graph");
  // Per-community accumulators in a std::map so the final summation order is
  // independent of hashing (bit-stable results across platforms and runs).
  std::map<int, std::pair<long double, long double>> acc;  // id -> (internal ordered-pair weight, total degree)
  long double m2 = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    long double deg = 0;
    for (const auto& [u, w] : g.neighbors(v)) {
      deg += w;
      if (membership[u] == membership[v]) acc[membership[v]].first += w;
    }
    auto& a = acc[membership[v]];
    a.second += deg;
    m2 += deg;
  }
  if (m2 <= 0) {
    std::cerr << "modularity: graph has zero total edge weight; Q defined as 0\n";
    return 0.0;
  }
  long double q = 0;
  for (const auto& [c, a] : acc) {
    (void)c;
    const long double frac_tot = a.second / m2;
    q += a.first / m2 - static_cast<long double>(resolution) * frac_tot * frac_tot;
  }
  return static_cast<double>(q);
}

namespace {

// Gains below this are treated as ties; a tie keeps the current community.
constexpr double kGainEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform draw from [0, bound) by rejection; no modulo bias, no reliance on
// implementation-defined std distributions.
std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = splitmix64(state);
    if (r >= threshold) return r % bound;
  }
}

// Working graph for the aggregation hierarchy. `self[v]` is the diagonal
// adjacency entry A_vv (aggregation folds internal edges into it at twice
// their undirected weight); `degree[v]` includes it once. m2 = sum of degrees
// is invariant across levels.
struct WorkGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // off-diagonal, both directions
  std::vector<double> self;
  std::vector<double> degree;
  long double m2 = 0;

  std::size_t size() const { return adj.size(); }
};

WorkGraph from_graph(const UndirectedGraph& g) {
  WorkGraph w;
  w.adj.resize(g.size());
  w.self.assign(g.size(), 0.0);
  w.degree.assign(g.size(), 0.0);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    w.adj[v] = g.neighbors(v);
    long double d = 0;
    for (const auto& [u, wt] : w.adj[v]) {
      (void)u;
      d += wt;
    }
    w.degree[v] = static_cast<double>(d);
    w.m2 += d;
  }
  return w;
}

/// One local-move phase. Every label assignment, tie-break, and the final
/// compaction is derived from `visit` rather than raw node indices, which is
/// what makes the whole algorithm equivariant under node relabeling.
///
/// On entry `comm` must hold dense labels 0..C-1 (warm start), or pass
/// `assign_singletons` to seed label[v] = rank of v in `visit`. Repeats full
/// passes over `visit` until none moves a node. A node moves only on a gain
/// strictly above kGainEps; candidates are the neighboring communities in
/// ascending label order, then isolation into a free label (so a tie between
/// any of them and the current community keeps the node in place). On exit
/// labels are re-compacted to 0..C-1 by first appearance along `visit`.
bool local_phase(const WorkGraph& w, std::vector<int>& comm,
                 const std::vector<std::uint32_t>& visit, bool assign_singletons,
                 double resolution) {
  const std::size_t n = w.size();
  if (assign_singletons) {
    for (std::size_t r = 0; r < n; ++r) comm[visit[r]] = static_cast<int>(r);
  }
  std::vector<double> tot(n, 0.0);
  std::vector<std::uint32_t> csize(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    tot[comm[v]] += w.degree[v];
    ++csize[comm[v]];
  }
  // Labels unused on entry are free for isolation moves; popped smallest-first.
  std::vector<int> free_labels;
  for (int c = static_cast<int>(n) - 1; c >= 0; --c)
    if (csize[c] == 0) free_labels.push_back(c);

  const double m2 = static_cast<double>(w.m2);
  std::vector<double> nw(n, -1.0);  // label -> edge weight from v; -1 = absent
  std::vector<int> nl;              // labels present in nw
  nl.reserve(64);

  bool any_move = false;
  bool moved_in_pass = true;
  while (moved_in_pass) {
    moved_in_pass = false;
    for (std::uint32_t v : visit) {
      const int cur = comm[v];
      nl.clear();
      for (const auto& [u, wt] : w.adj[v]) {
        const int cu = comm[u];
        if (nw[cu] < 0) {
          nw[cu] = 0.0;
          nl.push_back(cu);
        }
        nw[cu] += wt;
      }
      std::sort(nl.begin(), nl.end());

      // Score with v detached: k_{v,C} - resolution * k_v * tot_C / 2m.
      // The omitted terms of the modularity delta are constant over C.
      tot[cur] -= w.degree[v];
      const double k_cur = nw[cur] >= 0 ? nw[cur] : 0.0;
      double best_score = k_cur - resolution * w.degree[v] * tot[cur] / m2;
      int best = cur;
      for (const int c : nl) {
        if (c == cur) continue;
        const double score = nw[c] - resolution * w.degree[v] * tot[c] / m2;
        if (score > best_score + kGainEps) {
          best_score = score;
          best = c;
        }
      }
      // Isolating v into a fresh community scores exactly 0.
      if (!free_labels.empty() && 0.0 > best_score + kGainEps) {
        best = free_labels.back();
        free_labels.pop_back();
      }

      if (best != cur) {
        comm[v] = best;
        tot[best] += w.degree[v];
        --csize[cur];
        ++csize[best];
        if (csize[cur] == 0) {
          tot[cur] = 0.0;  // drop float residue before the label is reused
          free_labels.push_back(cur);
        }
        moved_in_pass = true;
        any_move = true;
      } else {
        tot[cur] += w.degree[v];
      }
      for (const int c : nl) nw[c] = -1.0;
    }
  }

  std::vector<int> remap(n, -1);
  int next = 0;
  for (const std::uint32_t v : visit) {
    int& r = remap[comm[v]];
    if (r < 0) r = next++;
  }
  for (std::uint32_t v = 0; v < n; ++v) comm[v] = remap[comm[v]];
  return any_move;
}

WorkGraph aggregate(const WorkGraph& w, const std::vector<int>& comm, std::size_t c_count) {
  WorkGraph a;
  a.adj.resize(c_count);
  a.self.assign(c_count, 0.0);
  a.degree.assign(c_count, 0.0);
  a.m2 = w.m2;
  std::map<std::pair<int, int>, double> offdiag;  // ordered keys: deterministic adjacency build
  for (std::uint32_t v = 0; v < w.size(); ++v) {
    const int cv = comm[v];
    a.self[cv] += w.self[v];
    a.degree[cv] += w.degree[v];
    for (const auto& [u, wt] : w.adj[v]) {
      const int cu = comm[u];
      if (cu == cv) {
        a.self[cv] += wt;  // both directions of an internal edge land here
      } else if (v < u) {
        offdiag[{std::min(cu, cv), std::max(cu, cv)}] += wt;
      }
    }
  }
  for (const auto& [key, wt] : offdiag) {
    a.adj[key.first].emplace_back(key.second, wt);
    a.adj[key.second].emplace_back(key.first, wt);
  }
  return a;
}

std::size_t label_count(const std::vector<int>& comm) {
  return comm.empty() ? 0 : static_cast<std::size_t>(*std::max_element(comm.begin(), comm.end())) + 1;
}

}  // namespace

namespace detail {

std::vector<std::uint32_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::uint64_t state = seed;
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t j = bounded_draw(state, i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

CommunityResult louvain_with_order(const UndirectedGraph& g, double resolution,
                                   const VisitOrder& order) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  if (!(resolution > 0)) throw std::invalid_argument("resolution must be positive");
  const std::size_t n = g.size();
  const WorkGraph base = from_graph(g);

  auto ordered_visit = [&order](std::size_t level, std::size_t count) {
    std::vector<std::uint32_t> visit = order(level, count);
    if (visit.size() != count)
      throw std::invalid_argument("louvain: visit order size does not match node count");
    return visit;
  };

  // Alternate two phases until neither moves a node: (A) local moves at
  // original-node granularity warm-started from the current partition, then
  // (B) the classic aggregation hierarchy. Plain Louvain stops after (B),
  // which does not guarantee the flattened partition is stable under
  // single-node moves; re-running (A) restores that guarantee, and every
  // accepted move strictly increases Q, so the loop terminates.
  std::vector<int> flat(n, 0);
  std::size_t level = 0;
  bool first = true;
  for (;;) {
    const bool moved = local_phase(base, flat, ordered_visit(level, n), first, resolution);
    ++level;
    first = false;
    if (!moved) break;

    WorkGraph wk = aggregate(base, flat, label_count(flat));
    for (;;) {
      std::vector<int> comm(wk.size(), 0);
      const bool moved_level =
          local_phase(wk, comm, ordered_visit(level, wk.size()), true, resolution);
      ++level;
      if (!moved_level) break;
      for (std::uint32_t i = 0; i < n; ++i) flat[i] = comm[flat[i]];
      wk = aggregate(wk, comm, label_count(comm));
    }
  }

  // Renumber by descending size, ties by smallest member index: stable ids
  // for reports and exports.
  const std::size_t c_count = label_count(flat);
  std::vector<std::size_t> size(c_count, 0);
  std::vector<std::uint32_t> min_member(c_count, std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < n; ++i) {
    ++size[flat[i]];
    min_member[flat[i]] = std::min(min_member[flat[i]], i);
  }
  std::vector<int> ids(c_count);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (size[a] != size[b]) return size[a] > size[b];
    return min_member[a] < min_member[b];
  });
  std::vector<int> remap(c_count, 0);
  for (std::size_t rank = 0; rank < ids.size(); ++rank) remap[ids[rank]] = static_cast<int>(rank);

  CommunityResult result;
  result.membership.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) result.membership[i] = remap[flat[i]];
  result.community_count = c_count;
  result.resolution = resolution;
  result.q = modularity(g, result.membership, resolution);
  return result;
}

}  // namespace detail

CommunityResult louvain(const UndirectedGraph& g, double resolution, std::uint64_t seed) {
  const auto order = [seed](std::size_t level, std::size_t count) {
    return detail::seeded_permutation(count, seed + 0x9E3779B97F4A7C15ULL * (level + 1));
  };
  CommunityResult result = detail::louvain_with_order(g, resolution, order);
  result.seed = seed;
  return result;
}

CommunityResult louvain_best(const UndirectedGraph& g, double resolution, std::uint64_t seed,
                             std::size_t n_restarts, std::size_t threads) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  if (!(resolution > 0)) throw std::invalid_argument("resolution must be positive");
  if (n_restarts == 0) n_restarts = 1;

  std::vector<CommunityResult> results(n_restarts);
  const std::size_t workers = std::min(threads == 0 ? std::size_t{1} : threads, n_restarts);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_restarts; ++i) results[i] = louvain(g, resolution, seed + i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_restarts; i += workers)
          results[i] = louvain(g, resolution, seed + i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n_restarts; ++i) {
    if (results[i].q > results[best].q) best = i;  // ties keep the lower seed
  }
  return std::move(results[best]);
}

}  // namespace strata
