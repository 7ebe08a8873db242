#include "strata/normalize.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>

#include "strata/errors.hpp"

namespace strata {

namespace {

// --- minimal UTF-8 machinery -------------------------------------------------
// Decoding is permissive: an invalid byte is passed through as a single
// codepoint so malformed input never aborts the pipeline.

struct Decoded {
  char32_t cp;
  std::size_t len;
};

Decoded decode_utf8(std::string_view s, std::size_t pos) {
  unsigned char b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t i) {
    return pos + i < s.size() &&
           (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x1F) << 6) |
                  (static_cast<unsigned char>(s[pos + 1]) & 0x3F);
    return cp >= 0x80 ? Decoded{cp, 2} : Decoded{b0, 1};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x0F) << 12) |
                  ((static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 6) |
                  (static_cast<unsigned char>(s[pos + 2]) & 0x3F);
    return cp >= 0x800 ? Decoded{cp, 3} : Decoded{b0, 1};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x07) << 18) |
                  ((static_cast<unsigned char>(s[pos + 1]) & 0x3F) << 12) |
                  ((static_cast<unsigned char>(s[pos + 2]) & 0x3F) << 6) |
                  (static_cast<unsigned char>(s[pos + 3]) & 0x3F);
    return cp >= 0x10000 && cp <= 0x10FFFF ? Decoded{cp, 4} : Decoded{b0, 1};
  }
  return {b0, 1};
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t fold_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
  }
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;  // Latin-1
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;  // Ÿ
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;  // Greek
  if (cp == 0x03C2) return 0x03C3;                                     // final sigma
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;                  // Cyrillic
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  if (cp == 0x2019) return '\'';  // curly apostrophe, common in tweets
  return cp;
}

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_digit_cp(char32_t cp) {
  return is_ascii_digit(cp) || (cp >= 0xFF10 && cp <= 0xFF19);
}

// Punctuation and symbols strippable from token edges. Everything not listed
// here counts as a word character.
bool is_strippable_cp(char32_t cp) {
  if (cp < 0x80) {
    bool alnum = (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    return !alnum;
  }
  if (cp >= 0x00A1 && cp <= 0x00BF) return true;
  if (cp == 0x00D7 || cp == 0x00F7) return true;
  if (cp >= 0x200B && cp <= 0x200F) return true;   // zero-width and marks
  if (cp >= 0x2010 && cp <= 0x2BFF) return true;   // punctuation, arrows, symbols
  if (cp >= 0x2E00 && cp <= 0x2E7F) return true;
  if (cp >= 0x3001 && cp <= 0x303F) return true;   // CJK punctuation
  if (cp >= 0xFE00 && cp <= 0xFE6F) return true;   // variation selectors, small forms
  if (cp == 0xFEFF) return true;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;   // fullwidth punctuation
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;
  if (cp >= 0x1F000 && cp <= 0x1FBFF) return true;  // emoji and pictographs
  return false;
}

bool starts_with_url_scheme(std::string_view piece) {
  return piece.starts_with("http://") || piece.starts_with("https://") ||
         piece.starts_with("www.");
}

// The bundled English list. One entry per word; contractions keep their
// apostrophes (the tokenizer preserves interior punctuation).
constexpr auto kBuiltinEnglish = std::to_array<std::string_view>({
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren't", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "can't", "cannot", "could",
    "couldn't", "did", "didn't", "do", "does", "doesn't", "doing", "don't", "down",
    "during", "each", "few", "for", "from", "further", "had", "hadn't", "has",
    "hasn't", "have", "haven't", "having", "he", "he'd", "he'll", "he's", "her",
    "here", "here's", "hers", "herself", "him", "himself", "his", "how", "how's",
    "i", "i'd", "i'll", "i'm", "i've", "if", "in", "into", "is", "isn't", "it",
    "it's", "its", "itself", "let's", "me", "more", "most", "mustn't", "my",
    "myself", "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other",
    "ought", "our", "ours", "ourselves", "out", "over", "own", "same", "shan't",
    "she", "she'd", "she'll", "she's", "should", "shouldn't", "so", "some", "such",
    "than", "that", "that's", "the", "their", "theirs", "them", "themselves",
    "then", "there", "there's", "these", "they", "they'd", "they'll", "they're",
    "they've", "this", "those", "through", "to", "too", "under", "until", "up",
    "very", "was", "wasn't", "we", "we'd", "we'll", "we're", "we've", "were",
    "weren't", "what", "what's", "when", "when's", "where", "where's", "which",
    "while", "who", "who's", "whom", "why", "why's", "with", "won't", "would",
    "wouldn't", "you", "you'd", "you'll", "you're", "you've", "your", "yours",
    "yourself", "yourselves"});

}  // namespace

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto [cp, len] = decode_utf8(text, pos);
    encode_utf8(fold_codepoint(cp), out);
    pos += len;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  std::vector<char32_t> piece;
  piece.reserve(32);

  auto flush = [&] {
    if (piece.empty()) return;
    std::size_t begin = 0, end = piece.size();
    while (begin < end && is_strippable_cp(piece[begin])) ++begin;
    while (end > begin && is_strippable_cp(piece[end - 1])) --end;
    if (begin == end) {
      piece.clear();
      return;
    }
    std::string word;
    bool all_numeric = true;
    for (std::size_t i = begin; i < end; ++i) {
      encode_utf8(piece[i], word);
      all_numeric = all_numeric && is_digit_cp(piece[i]);
    }
    piece.clear();
    if (all_numeric) return;
    if (starts_with_url_scheme(word)) return;
    tokens.push_back(std::move(word));
  };

  while (pos < text.size()) {
    auto [cp, len] = decode_utf8(text, pos);
    pos += len;
    if (is_space_cp(cp)) {
      flush();
    } else {
      piece.push_back(fold_codepoint(cp));
    }
  }
  flush();
  return tokens;
}

StopwordSet StopwordSet::builtin_english() {
  StopwordSet set;
  for (auto w : kBuiltinEnglish) set.words_.emplace(w);
  set.source_ = "builtin:en";
  return set;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read stop-word file: " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view v = line;
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    if (v.empty() || v.front() == '#') continue;
    set.add(v);
  }
  set.source_ = path.string();
  return set;
}

void StopwordSet::add(std::string_view word) { words_.insert(fold_case(word)); }

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stops) {
  std::erase_if(tokens, [&](const std::string& t) { return stops.contains(t); });
  return tokens;
}

TokenStream normalize_document(std::string doc_id, std::size_t layer, std::string_view text,
                               const StopwordSet& stops) {
  TokenStream stream;
  stream.doc_id = std::move(doc_id);
  stream.layer = layer;
  stream.tokens = remove_stopwords(tokenize(text), stops);
  return stream;
}

}  // namespace strata
