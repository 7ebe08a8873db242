#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace strata {

/// Cleaned token sequence for one document within one layer.
struct TokenStream {
  std::string doc_id;
  std::size_t layer = 0;
  std::vector<std::string> tokens;
};

/// Lowercases a UTF-8 string by simple case folding. Covers ASCII, Latin-1,
/// Latin Extended-A, Greek, and Cyrillic; other codepoints pass through.
/// U+2019 (curly apostrophe) is normalized to '\''.
std::string fold_case(std::string_view text);

/// Splits on Unicode whitespace, folds case, strips leading/trailing
/// punctuation and symbols from each piece (which removes # and @ sigils),
/// then drops URL pieces (http://, https://, www.), pieces that are empty
/// after stripping, and pure-numeric pieces.
std::vector<std::string> tokenize(std::string_view text);

/// Exact-membership stop-word set over case-folded tokens.
class StopwordSet {
 public:
  StopwordSet() = default;

  /// The bundled English list (~170 function words).
  static StopwordSet builtin_english();

  /// Loads a UTF-8 file, one word per line; '#' starts a comment line.
  /// Throws IoError if the file cannot be read.
  static StopwordSet from_file(const std::filesystem::path& path);

  void add(std::string_view word);  // folds before inserting
  bool contains(std::string_view folded_token) const {
    return words_.contains(std::string(folded_token));
  }
  std::size_t size() const { return words_.size(); }

  const std::string& source() const { return source_; }
  void set_source(std::string s) { source_ = std::move(s); }

 private:
  std::unordered_set<std::string> words_;
  std::string source_ = "empty";
};

/// Subsequence of `tokens` not in `stops`; relative order preserved.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stops);

/// tokenize + remove_stopwords for one document.
TokenStream normalize_document(std::string doc_id, std::size_t layer, std::string_view text,
                               const StopwordSet& stops);

}  // namespace strata
