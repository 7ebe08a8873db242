#include "strata/bigram.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace strata {

namespace {
constexpr std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
}  // namespace

std::uint32_t BigramTable::intern(const std::string& word) {
  auto [it, inserted] = ids_.try_emplace(word, static_cast<std::uint32_t>(words_.size()));
  if (inserted) {
    words_.push_back(word);
    unigram_counts_.push_back(0);
  }
  return it->second;
}

std::optional<std::uint32_t> BigramTable::find(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void BigramTable::add_tokens(std::span<const std::string> tokens, CountMode mode) {
  if (tokens.empty()) return;

  if (mode == CountMode::tokens) {
    std::uint32_t prev = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::uint32_t id = intern(tokens[i]);
      ++unigram_counts_[id];
      ++total_tokens_;
      if (i > 0 && prev != id) ++bigram_counts_[pack(prev, id)];
      prev = id;
    }
    return;
  }

  // Document-frequency mode: distinct words and distinct adjacent pairs
  // count once per document.
  std::unordered_set<std::uint32_t> seen_words;
  std::unordered_set<std::uint64_t> seen_pairs;
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::uint32_t id = intern(tokens[i]);
    if (seen_words.insert(id).second) ++unigram_counts_[id];
    ++total_tokens_;
    if (i > 0 && prev != id) {
      std::uint64_t key = pack(prev, id);
      if (seen_pairs.insert(key).second) ++bigram_counts_[key];
    }
    prev = id;
  }
}

void BigramTable::merge(const BigramTable& other) {
  std::vector<std::uint32_t> remap(other.words_.size());
  for (std::size_t i = 0; i < other.words_.size(); ++i) {
    std::uint32_t id = intern(other.words_[i]);
    remap[i] = id;
    unigram_counts_[id] += other.unigram_counts_[i];
  }
  for (const auto& [key, count] : other.bigram_counts_) {
    std::uint32_t a = remap[static_cast<std::uint32_t>(key >> 32)];
    std::uint32_t b = remap[static_cast<std::uint32_t>(key & 0xFFFFFFFFu)];
    bigram_counts_[pack(a, b)] += count;
  }
  total_tokens_ += other.total_tokens_;
}

std::uint64_t BigramTable::unigram_count(std::string_view word) const {
  auto id = find(word);
  return id ? unigram_counts_[*id] : 0;
}

std::uint64_t BigramTable::bigram_count(std::string_view first, std::string_view second) const {
  auto a = find(first);
  auto b = find(second);
  if (!a || !b) return 0;
  auto it = bigram_counts_.find(pack(*a, *b));
  return it == bigram_counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> BigramTable::unigrams() const {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  out.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (unigram_counts_[i] > 0) out.emplace_back(words_[i], unigram_counts_[i]);
  }
  return out;
}

std::vector<std::tuple<std::string, std::string, std::uint64_t>> BigramTable::bigrams() const {
  std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
  out.reserve(bigram_counts_.size());
  for (const auto& [key, count] : bigram_counts_) {
    out.emplace_back(words_[static_cast<std::uint32_t>(key >> 32)],
                     words_[static_cast<std::uint32_t>(key & 0xFFFFFFFFu)], count);
  }
  return out;
}

void BigramTable::write_tsv(std::ostream& out) const {
  auto rows = bigrams();
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (std::get<2>(x) != std::get<2>(y)) return std::get<2>(x) > std::get<2>(y);
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return std::get<1>(x) < std::get<1>(y);
  });
  for (const auto& [w1, w2, count] : rows) {
    out << w1 << '\t' << w2 << '\t' << count << '\n';
  }
}

}  // namespace strata
