#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/document.hpp"

namespace strata {

enum class CorpusFormat { jsonl, csv };

std::optional<CorpusFormat> corpus_format_from_string(std::string_view s);
std::string_view to_string(CorpusFormat f);

/// Maps the required document fields onto record field names (JSON keys or
/// CSV header columns).
struct FieldMapping {
  std::string id = "id";
  std::string text = "text";
  std::string timestamp = "created_at";
};

struct IngestStats {
  std::uint64_t parsed = 0;      // well-formed records emitted downstream
  std::uint64_t rejected = 0;    // malformed records skipped
  std::uint64_t empty_text = 0;  // records dropped for empty text
};

enum class RecordOutcome { ok, malformed, empty_text };

/// Parses one JSONL record. On `ok`, `out` holds the document.
RecordOutcome parse_jsonl_record(std::string_view line, const FieldMapping& fields,
                                 Document& out);

/// Column indices for the mapped fields within a CSV header row.
struct CsvColumns {
  std::size_t id = 0;
  std::size_t text = 0;
  std::size_t timestamp = 0;
};

/// Builds a document from one CSV record's fields.
RecordOutcome document_from_csv_fields(const std::vector<std::string>& fields,
                                       const CsvColumns& columns, Document& out);

/// Incremental RFC-4180 reader: quoted fields may contain commas, doubled
/// quotes, and line breaks. Reads one record per call.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// False at end of input. `fields` is cleared and refilled.
  bool next_record(std::vector<std::string>& fields);

 private:
  std::istream& in_;
};

/// Streams Documents from `source` in input order, invoking `sink` per
/// document. Malformed records are tallied, never fatal. Blank lines are
/// ignored. For CSV the first record must be a header row naming every
/// mapped field; a missing column throws ConfigError. An unreadable stream
/// throws IoError.
IngestStats parse_corpus(std::istream& source, CorpusFormat format, const FieldMapping& fields,
                         const std::function<void(Document&&)>& sink);

/// Convenience overload opening a file path.
IngestStats parse_corpus_file(const std::string& path, CorpusFormat format,
                              const FieldMapping& fields,
                              const std::function<void(Document&&)>& sink);

}  // namespace strata
