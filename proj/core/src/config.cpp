#include "strata/config.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "strata/errors.hpp"
#include "strata/normalize.hpp"
#include "strata/timestamp.hpp"

namespace strata {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

/// Typo protection: every object section rejects keys it does not know.
void check_keys(const json& obj, const char* section,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const auto a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(std::string("unknown key \"") + key + "\" in " + section);
  }
}

const json* get(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where + " must be a string");
  return v.get<std::string>();
}

bool require_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where + " must be a boolean");
  return v.get<bool>();
}

std::uint64_t require_uint(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

std::vector<std::string> require_string_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(require_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void parse_input_section(const json& section, PipelineConfig& cfg) {
  if (!section.is_object()) fail("input must be an object");
  check_keys(section, "input", {"path", "paths", "format", "fields"});
  if (const json* path = get(section, "path"))
    cfg.inputs.emplace_back(require_string(*path, "input.path"));
  if (const json* paths = get(section, "paths")) {
    for (auto& p : require_string_array(*paths, "input.paths")) cfg.inputs.emplace_back(p);
  }
  if (const json* format = get(section, "format")) {
    const std::string name = require_string(*format, "input.format");
    auto parsed = corpus_format_from_string(name);
    if (!parsed) fail("input.format must be \"jsonl\" or \"csv\", got \"" + name + "\"");
    cfg.format = *parsed;
  }
  if (const json* fields = get(section, "fields")) {
    if (!fields->is_object()) fail("input.fields must be an object");
    check_keys(*fields, "input.fields", {"id", "text", "timestamp"});
    if (const json* v = get(*fields, "id")) cfg.fields.id = require_string(*v, "input.fields.id");
    if (const json* v = get(*fields, "text"))
      cfg.fields.text = require_string(*v, "input.fields.text");
    if (const json* v = get(*fields, "timestamp"))
      cfg.fields.timestamp = require_string(*v, "input.fields.timestamp");
  }
}

void parse_layers_section(const json& section, PipelineConfig& cfg) {
  if (!section.is_array()) fail("layers must be an array");
  for (std::size_t i = 0; i < section.size(); ++i) {
    const std::string where = "layers[" + std::to_string(i) + "]";
    const json& entry = section[i];
    if (!entry.is_object()) fail(where + " must be an object");
    check_keys(entry, where.c_str(), {"name", "start", "end", "suffix"});
    const json* name = get(entry, "name");
    const json* start = get(entry, "start");
    const json* end = get(entry, "end");
    if (!name || !start || !end) fail(where + " requires name, start, and end");
    const std::string start_date = require_string(*start, where + ".start");
    const std::string end_date = require_string(*end, where + ".end");
    if (!parse_date(start_date)) fail(where + ".start: invalid date \"" + start_date + "\"");
    if (!parse_date(end_date)) fail(where + ".end: invalid date \"" + end_date + "\"");

    std::string suffix;
    if (const json* s = get(entry, "suffix")) {
      suffix = require_string(*s, where + ".suffix");
    } else {
      auto fallback = default_layer_suffix(i);
      if (!fallback)
        fail(where + ".suffix is required: default symbols cover only layers 0..4");
      suffix = *fallback;
    }
    auto layer = make_layer(i, require_string(*name, where + ".name"), start_date, end_date,
                            std::move(suffix));
    cfg.layers.push_back(std::move(*layer));
  }
}

void parse_stopwords_section(const json& section, PipelineConfig& cfg) {
  if (!section.is_object()) fail("stopwords must be an object");
  check_keys(section, "stopwords", {"source", "extra", "replace"});
  if (const json* v = get(section, "source"))
    cfg.stopwords.source = require_string(*v, "stopwords.source");
  if (const json* v = get(section, "extra"))
    cfg.stopwords.extra = require_string_array(*v, "stopwords.extra");
  if (const json* v = get(section, "replace"))
    cfg.stopwords.replace = require_bool(*v, "stopwords.replace");
}

void parse_community_section(const json& section, PipelineConfig& cfg) {
  if (!section.is_object()) fail("community must be an object");
  check_keys(section, "community", {"resolution", "seed", "n_restarts", "include_inter_edges"});
  if (const json* v = get(section, "resolution"))
    cfg.community.resolution = require_number(*v, "community.resolution");
  if (const json* v = get(section, "seed")) cfg.community.seed = require_uint(*v, "community.seed");
  if (const json* v = get(section, "n_restarts"))
    cfg.community.n_restarts = static_cast<std::size_t>(require_uint(*v, "community.n_restarts"));
  if (const json* v = get(section, "include_inter_edges"))
    cfg.community.include_inter_edges = require_bool(*v, "community.include_inter_edges");
}

void parse_export_section(const json& section, PipelineConfig& cfg) {
  if (!section.is_object()) fail("export must be an object");
  check_keys(section, "export",
             {"formats", "output_dir", "layer_spacing", "include_positions"});
  if (const json* v = get(section, "formats")) {
    cfg.exporter.formats.clear();
    for (const auto& name : require_string_array(*v, "export.formats")) {
      auto parsed = export_format_from_string(name);
      if (!parsed)
        fail("export.formats: unknown format \"" + name +
             "\" (expected gexf, graphml, or csv)");
      cfg.exporter.formats.push_back(*parsed);
    }
  }
  if (const json* v = get(section, "output_dir"))
    cfg.exporter.output_dir = require_string(*v, "export.output_dir");
  if (const json* v = get(section, "layer_spacing"))
    cfg.exporter.layer_spacing = require_number(*v, "export.layer_spacing");
  if (const json* v = get(section, "include_positions"))
    cfg.exporter.include_positions = require_bool(*v, "export.include_positions");
}

PipelineConfig parse_config_json(const json& root, const std::filesystem::path& base_dir) {
  if (!root.is_object()) fail("top level must be an object");
  check_keys(root, "the top level",
             {"input", "layers", "top_k", "pillars", "coupling", "min_edge_weight", "count_mode",
              "stopwords", "dedupe_exact_text", "community", "threads", "export"});

  PipelineConfig cfg;
  cfg.base_dir = base_dir;
  if (const json* v = get(root, "input")) parse_input_section(*v, cfg);
  if (const json* v = get(root, "layers")) parse_layers_section(*v, cfg);
  if (const json* v = get(root, "top_k"))
    cfg.top_k = static_cast<std::size_t>(require_uint(*v, "top_k"));
  if (const json* v = get(root, "pillars")) cfg.pillars = require_string_array(*v, "pillars");
  if (const json* v = get(root, "coupling")) {
    const std::string name = require_string(*v, "coupling");
    auto parsed = coupling_from_string(name);
    if (!parsed) fail("coupling must be \"consecutive\" or \"all_pairs\", got \"" + name + "\"");
    cfg.coupling = *parsed;
  }
  if (const json* v = get(root, "min_edge_weight"))
    cfg.min_edge_weight = require_uint(*v, "min_edge_weight");
  if (const json* v = get(root, "count_mode")) {
    const std::string name = require_string(*v, "count_mode");
    if (name == "tokens") {
      cfg.count_mode = CountMode::tokens;
    } else if (name == "documents") {
      cfg.count_mode = CountMode::documents;
    } else {
      fail("count_mode must be \"tokens\" or \"documents\", got \"" + name + "\"");
    }
  }
  if (const json* v = get(root, "stopwords")) parse_stopwords_section(*v, cfg);
  if (const json* v = get(root, "dedupe_exact_text"))
    cfg.dedupe_exact_text = require_bool(*v, "dedupe_exact_text");
  if (const json* v = get(root, "community")) parse_community_section(*v, cfg);
  if (const json* v = get(root, "threads"))
    cfg.threads = static_cast<std::size_t>(require_uint(*v, "threads"));
  if (const json* v = get(root, "export")) parse_export_section(*v, cfg);
  return cfg;
}

std::string join_paths(const std::vector<std::filesystem::path>& paths) {
  std::string out;
  for (const auto& p : paths) {
    if (!out.empty()) out += ';';
    out += p.string();
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ',';
    out += w;
  }
  return out;
}

std::string trim_number(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::filesystem::path base =
      path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return load_config_from_string(buffer.str(), base);
}

PipelineConfig load_config_from_string(const std::string& text,
                                       const std::filesystem::path& base_dir) {
  const json root = json::parse(text, nullptr, false, /*ignore_comments=*/true);
  if (root.is_discarded()) throw ConfigError("config: malformed JSON");
  return parse_config_json(root, base_dir);
}

std::vector<std::string> PipelineConfig::validate() const {
  std::vector<std::string> violations;
  if (inputs.empty()) violations.push_back("input.paths must list at least one file");
  if (layers.empty()) violations.push_back("layers must contain at least one layer");
  for (const auto& v : validate_layers(layers)) violations.push_back(v);
  if (top_k < 1) violations.push_back("top_k must be ≥ 1");
  if (min_edge_weight < 1) violations.push_back("min_edge_weight must be ≥ 1");
  for (std::size_t i = 0; i < pillars.size(); ++i) {
    if (pillars[i].empty())
      violations.push_back("pillars[" + std::to_string(i) + "] must be non-empty");
  }
  if (!(community.resolution > 0)) violations.push_back("community.resolution must be > 0");
  if (community.n_restarts < 1) violations.push_back("community.n_restarts must be ≥ 1");
  if (exporter.formats.empty())
    violations.push_back("export.formats must select at least one format");
  if (!(exporter.layer_spacing > 0)) violations.push_back("export.layer_spacing must be > 0");
  if (stopwords.source.empty())
    violations.push_back("stopwords.source must be \"builtin:en\", \"none\", or a file path");
  return violations;
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("input", join_paths(inputs));
  out.emplace_back("format", std::string(to_string(format)));
  out.emplace_back("top_k", std::to_string(top_k));
  out.emplace_back("pillars", join_words(pillars));
  out.emplace_back("coupling", std::string(to_string(coupling)));
  out.emplace_back("min_edge_weight", std::to_string(min_edge_weight));
  out.emplace_back("count_mode", count_mode == CountMode::tokens ? "tokens" : "documents");
  out.emplace_back("stopwords.source", stopwords.source);
  out.emplace_back("stopwords.extra", join_words(stopwords.extra));
  out.emplace_back("stopwords.replace", stopwords.replace ? "true" : "false");
  out.emplace_back("dedupe_exact_text", dedupe_exact_text ? "true" : "false");
  out.emplace_back("community.resolution", trim_number(community.resolution));
  out.emplace_back("community.seed", std::to_string(community.seed));
  out.emplace_back("community.n_restarts", std::to_string(community.n_restarts));
  out.emplace_back("community.include_inter_edges",
                   community.include_inter_edges ? "true" : "false");
  out.emplace_back("threads", std::to_string(threads));
  std::string formats;
  for (const auto f : exporter.formats) {
    if (!formats.empty()) formats += ',';
    formats += to_string(f);
  }
  out.emplace_back("export.formats", formats);
  out.emplace_back("export.output_dir", exporter.output_dir.string());
  out.emplace_back("export.layer_spacing", trim_number(exporter.layer_spacing));
  out.emplace_back("export.include_positions", exporter.include_positions ? "true" : "false");
  return out;
}

std::unordered_set<std::string> PipelineConfig::pillar_set() const {
  std::unordered_set<std::string> set;
  for (const auto& p : pillars) set.insert(fold_case(p));
  return set;
}

std::filesystem::path PipelineConfig::resolve(const std::filesystem::path& p) const {
  if (p.is_absolute()) return p;
  return base_dir / p;
}

std::size_t effective_threads(std::size_t configured) {
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace strata
