#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace strata {

enum class CountMode {
  tokens,     // every occurrence counts
  documents,  // each distinct word / pair counts once per document
};

/// Per-layer unigram and bigram frequency table. Bigrams are stored as
/// ordered pairs of adjacent tokens within one document; self-pairs (w,w)
/// are skipped and pairs never span document boundaries. Words are interned
/// so pair keys pack into one 64-bit value.
class BigramTable {
 public:
  explicit BigramTable(std::size_t layer = 0) : layer_(layer) {}

  std::size_t layer() const { return layer_; }

  /// Accumulates one document's token stream.
  void add_tokens(std::span<const std::string> tokens, CountMode mode = CountMode::tokens);

  /// Adds another table's counts into this one. Tables built from corpus
  /// shards and merged equal the table built from the whole corpus.
  void merge(const BigramTable& other);

  std::uint64_t unigram_count(std::string_view word) const;
  std::uint64_t bigram_count(std::string_view first, std::string_view second) const;

  /// Symmetrized count: bigram_count(a,b) + bigram_count(b,a).
  std::uint64_t pair_weight(std::string_view a, std::string_view b) const {
    return bigram_count(a, b) + bigram_count(b, a);
  }

  std::size_t vocabulary_size() const { return words_.size(); }
  std::size_t distinct_bigrams() const { return bigram_counts_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  /// (word, count) pairs in unspecified order.
  std::vector<std::pair<std::string, std::uint64_t>> unigrams() const;

  /// (first, second, count) triples in unspecified order.
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> bigrams() const;

  /// Debug dump: "w1 <tab> w2 <tab> count", sorted by count descending then
  /// lexicographically by (w1, w2).
  void write_tsv(std::ostream& out) const;

 private:
  std::uint32_t intern(const std::string& word);
  std::optional<std::uint32_t> find(std::string_view word) const;

  std::size_t layer_;
  std::vector<std::string> words_;  // id -> word
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::uint64_t> unigram_counts_;  // by id
  std::unordered_map<std::uint64_t, std::uint64_t> bigram_counts_;  // (a << 32) | b
  std::uint64_t total_tokens_ = 0;
};

}  // namespace strata
