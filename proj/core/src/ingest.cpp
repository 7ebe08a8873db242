#include "strata/ingest.hpp"

#include <fstream>

#include <json.hpp>

#include "strata/errors.hpp"

namespace strata {

namespace {

using nlohmann::json;

std::optional<EpochSeconds> timestamp_from_json(const json& v) {
  if (v.is_string()) return parse_timestamp(v.get_ref<const std::string&>());
  if (v.is_number_integer()) return v.get<std::int64_t>();
  return std::nullopt;
}

std::optional<std::string> id_from_json(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  return std::nullopt;
}

}  // namespace

std::optional<CorpusFormat> corpus_format_from_string(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::jsonl;
  if (s == "csv") return CorpusFormat::csv;
  return std::nullopt;
}

std::string_view to_string(CorpusFormat f) {
  return f == CorpusFormat::jsonl ? "jsonl" : "csv";
}

RecordOutcome parse_jsonl_record(std::string_view line, const FieldMapping& fields,
                                 Document& out) {
  json rec = json::parse(line, nullptr, false);
  if (rec.is_discarded() || !rec.is_object()) return RecordOutcome::malformed;

  auto id_it = rec.find(fields.id);
  auto text_it = rec.find(fields.text);
  auto ts_it = rec.find(fields.timestamp);
  if (id_it == rec.end() || text_it == rec.end() || ts_it == rec.end()) {
    return RecordOutcome::malformed;
  }
  auto id = id_from_json(*id_it);
  if (!id || !text_it->is_string()) return RecordOutcome::malformed;
  auto ts = timestamp_from_json(*ts_it);
  if (!ts) return RecordOutcome::malformed;

  if (text_it->get_ref<const std::string&>().empty()) return RecordOutcome::empty_text;

  out.id = std::move(*id);
  out.text = text_it->get<std::string>();
  out.timestamp = *ts;
  return RecordOutcome::ok;
}

RecordOutcome document_from_csv_fields(const std::vector<std::string>& fields,
                                       const CsvColumns& columns, Document& out) {
  std::size_t needed = std::max({columns.id, columns.text, columns.timestamp}) + 1;
  if (fields.size() < needed) return RecordOutcome::malformed;
  auto ts = parse_timestamp(fields[columns.timestamp]);
  if (!ts) return RecordOutcome::malformed;
  if (fields[columns.text].empty()) return RecordOutcome::empty_text;
  out.id = fields[columns.id];
  out.text = fields[columns.text];
  out.timestamp = *ts;
  return RecordOutcome::ok;
}

bool CsvReader::next_record(std::vector<std::string>& fields) {
  fields.clear();
  int c = in_.get();
  // Skip blank lines between records.
  while (c == '\n' || c == '\r') c = in_.get();
  if (c == std::char_traits<char>::eof()) return false;

  std::string field;
  bool in_quotes = false;
  while (true) {
    if (c == std::char_traits<char>::eof()) {
      fields.push_back(std::move(field));
      return true;
    }
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          field.push_back('"');
          in_.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in_.peek() == '\n') in_.get();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
    c = in_.get();
  }
}

namespace {

CsvColumns resolve_csv_columns(const std::vector<std::string>& header,
                               const FieldMapping& fields) {
  auto find = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ConfigError("CSV header is missing mapped column \"" + name + "\"");
  };
  CsvColumns cols;
  cols.id = find(fields.id);
  cols.text = find(fields.text);
  cols.timestamp = find(fields.timestamp);
  return cols;
}

IngestStats parse_jsonl_stream(std::istream& source, const FieldMapping& fields,
                               const std::function<void(Document&&)>& sink) {
  IngestStats stats;
  std::string line;
  Document doc;
  while (std::getline(source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;
    switch (parse_jsonl_record(line, fields, doc)) {
      case RecordOutcome::ok:
        ++stats.parsed;
        sink(std::move(doc));
        doc = Document{};
        break;
      case RecordOutcome::malformed:
        ++stats.rejected;
        break;
      case RecordOutcome::empty_text:
        ++stats.empty_text;
        break;
    }
  }
  return stats;
}

IngestStats parse_csv_stream(std::istream& source, const FieldMapping& fields,
                             const std::function<void(Document&&)>& sink) {
  IngestStats stats;
  CsvReader reader(source);
  std::vector<std::string> record;
  if (!reader.next_record(record)) return stats;  // empty input: no header, no records
  CsvColumns cols = resolve_csv_columns(record, fields);
  Document doc;
  while (reader.next_record(record)) {
    switch (document_from_csv_fields(record, cols, doc)) {
      case RecordOutcome::ok:
        ++stats.parsed;
        sink(std::move(doc));
        doc = Document{};
        break;
      case RecordOutcome::malformed:
        ++stats.rejected;
        break;
      case RecordOutcome::empty_text:
        ++stats.empty_text;
        break;
    }
  }
  return stats;
}

}  // namespace

IngestStats parse_corpus(std::istream& source, CorpusFormat format, const FieldMapping& fields,
                         const std::function<void(Document&&)>& sink) {
  if (!source) throw IoError("corpus stream is not readable");
  return format == CorpusFormat::jsonl ? parse_jsonl_stream(source, fields, sink)
                                       : parse_csv_stream(source, fields, sink);
}

IngestStats parse_corpus_file(const std::string& path, CorpusFormat format,
                              const FieldMapping& fields,
                              const std::function<void(Document&&)>& sink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return parse_corpus(in, format, fields, sink);
}

}  // namespace strata
