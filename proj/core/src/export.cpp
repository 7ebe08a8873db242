#include "strata/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "strata/csv_util.hpp"
#include "strata/errors.hpp"

namespace strata {

std::optional<ExportFormat> export_format_from_string(std::string_view s) {
  if (s == "gexf") return ExportFormat::gexf;
  if (s == "graphml") return ExportFormat::graphml;
  if (s == "csv") return ExportFormat::csv;
  return std::nullopt;
}

std::string_view to_string(ExportFormat f) {
  switch (f) {
    case ExportFormat::gexf: return "gexf";
    case ExportFormat::graphml: return "graphml";
    case ExportFormat::csv: return "csv";
  }
  return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void check_graph_inputs(const char* op, const MultilayerGraph& g,
                        std::span<const int> membership, std::span<const LayerSpec> layers) {
  if (g.nodes.empty()) throw std::invalid_argument(std::string(op) + ": empty graph");
  if (membership.size() != g.nodes.size())
    throw std::invalid_argument(std::string(op) + ": membership size does not match graph");
  for (const auto& node : g.nodes) {
    if (node.layer >= layers.size())
      throw std::invalid_argument(std::string(op) + ": node layer out of range");
  }
}

/// Deterministic per-layer circular layout: layer i sits on the plane
/// z = i * layer_spacing; its nodes, in id order, go around a circle of
/// radius 10 * sqrt(layer size).
struct Position {
  double x = 0, y = 0, z = 0;
};

std::vector<Position> circle_positions(const MultilayerGraph& g, std::size_t layer_count,
                                       double layer_spacing) {
  std::vector<std::size_t> layer_size(layer_count, 0);
  for (const auto& node : g.nodes) ++layer_size[node.layer];
  std::vector<std::size_t> ordinal(layer_count, 0);
  std::vector<Position> pos(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const std::size_t layer = g.nodes[i].layer;
    const std::size_t n = layer_size[layer];
    const double angle = 2.0 * kPi * static_cast<double>(ordinal[layer]++) / static_cast<double>(n);
    const double radius = 10.0 * std::sqrt(static_cast<double>(n));
    pos[i] = {radius * std::cos(angle), radius * std::sin(angle),
              static_cast<double>(layer) * layer_spacing};
  }
  return pos;
}

}  // namespace

void write_gexf(const MultilayerGraph& g, std::span<const int> membership,
                std::span<const LayerSpec> layers, const ExportConfig& cfg) {
  check_graph_inputs("write_gexf", g, membership, layers);
  const std::filesystem::path path = cfg.output_dir / "graph.gexf";
  std::ofstream out = open_output(path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.3\" xmlns:viz=\"http://gexf.net/1.3/viz\""
         " version=\"1.3\">\n"
      << "  <meta>\n"
      << "    <creator>stratanet</creator>\n"
      << "    <description>temporal multilayer word co-occurrence network</description>\n"
      << "  </meta>\n"
      << "  <graph defaultedgetype=\"undirected\" mode=\"static\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"0\" title=\"base_word\" type=\"string\"/>\n"
      << "      <attribute id=\"1\" title=\"layer\" type=\"integer\"/>\n"
      << "      <attribute id=\"2\" title=\"layer_name\" type=\"string\"/>\n"
      << "      <attribute id=\"3\" title=\"is_pillar\" type=\"boolean\"/>\n"
      << "      <attribute id=\"4\" title=\"community\" type=\"integer\"/>\n"
      << "      <attribute id=\"5\" title=\"weight\" type=\"long\"/>\n"
      << "    </attributes>\n"
      << "    <attributes class=\"edge\">\n"
      << "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n"
      << "    </attributes>\n"
      << "    <nodes>\n";

  std::vector<Position> pos;
  if (cfg.include_positions) pos = circle_positions(g, layers.size(), cfg.layer_spacing);

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const SupraNode& node = g.nodes[i];
    const std::string id = xml_escape(node.id);
    out << "      <node id=\"" << id << "\" label=\"" << id << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\"" << xml_escape(node.base_word) << "\"/>\n"
        << "          <attvalue for=\"1\" value=\"" << node.layer << "\"/>\n"
        << "          <attvalue for=\"2\" value=\"" << xml_escape(layers[node.layer].name)
        << "\"/>\n"
        << "          <attvalue for=\"3\" value=\"" << (node.is_pillar ? "true" : "false")
        << "\"/>\n"
        << "          <attvalue for=\"4\" value=\"" << membership[i] << "\"/>\n"
        << "          <attvalue for=\"5\" value=\"" << node.weight << "\"/>\n"
        << "        </attvalues>\n";
    if (cfg.include_positions) {
      out << "        <viz:position x=\"" << fmt_double(pos[i].x, 3) << "\" y=\""
          << fmt_double(pos[i].y, 3) << "\" z=\"" << fmt_double(pos[i].z, 3) << "\"/>\n";
    }
    out << "      </node>\n";
  }

  out << "    </nodes>\n"
      << "    <edges>\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const SupraEdge& edge = g.edges[e];
    out << "      <edge id=\"" << e << "\" source=\"" << xml_escape(g.nodes[edge.source].id)
        << "\" target=\"" << xml_escape(g.nodes[edge.target].id) << "\" weight=\"" << edge.weight
        << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\""
        << (edge.kind == EdgeKind::intra ? "intra" : "inter") << "\"/>\n"
        << "        </attvalues>\n"
        << "      </edge>\n";
  }
  out << "    </edges>\n"
      << "  </graph>\n"
      << "</gexf>\n";
  finish_output(out, path);
}

void write_graphml(const MultilayerGraph& g, std::span<const int> membership,
                   std::span<const LayerSpec> layers, const ExportConfig& cfg) {
  check_graph_inputs("write_graphml", g, membership, layers);
  const std::filesystem::path path = cfg.output_dir / "graph.graphml";
  std::ofstream out = open_output(path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"d0\" for=\"node\" attr.name=\"base_word\" attr.type=\"string\"/>\n"
      << "  <key id=\"d1\" for=\"node\" attr.name=\"layer\" attr.type=\"int\"/>\n"
      << "  <key id=\"d2\" for=\"node\" attr.name=\"layer_name\" attr.type=\"string\"/>\n"
      << "  <key id=\"d3\" for=\"node\" attr.name=\"is_pillar\" attr.type=\"boolean\"/>\n"
      << "  <key id=\"d4\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n"
      << "  <key id=\"d5\" for=\"node\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <key id=\"d6\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <key id=\"d7\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const SupraNode& node = g.nodes[i];
    out << "    <node id=\"" << xml_escape(node.id) << "\">\n"
        << "      <data key=\"d0\">" << xml_escape(node.base_word) << "</data>\n"
        << "      <data key=\"d1\">" << node.layer << "</data>\n"
        << "      <data key=\"d2\">" << xml_escape(layers[node.layer].name) << "</data>\n"
        << "      <data key=\"d3\">" << (node.is_pillar ? "true" : "false") << "</data>\n"
        << "      <data key=\"d4\">" << membership[i] << "</data>\n"
        << "      <data key=\"d5\">" << node.weight << "</data>\n"
        << "    </node>\n";
  }
  for (const SupraEdge& edge : g.edges) {
    out << "    <edge source=\"" << xml_escape(g.nodes[edge.source].id) << "\" target=\""
        << xml_escape(g.nodes[edge.target].id) << "\">\n"
        << "      <data key=\"d6\">" << edge.weight << "</data>\n"
        << "      <data key=\"d7\">" << (edge.kind == EdgeKind::intra ? "intra" : "inter")
        << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n"
      << "</graphml>\n";
  finish_output(out, path);
}

void write_csv(const MultilayerGraph& g, std::span<const int> membership,
               const ExportConfig& cfg) {
  if (membership.size() != g.nodes.size())
    throw std::invalid_argument("write_csv: membership size does not match graph");

  const std::filesystem::path nodes_path = cfg.output_dir / "nodes.csv";
  std::ofstream nodes = open_output(nodes_path);
  nodes << "id,base_word,layer,weight,is_pillar,community\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const SupraNode& node = g.nodes[i];
    put_csv_field(nodes, node.id);
    nodes << ',';
    put_csv_field(nodes, node.base_word);
    nodes << ',' << node.layer << ',' << node.weight << ','
          << (node.is_pillar ? "true" : "false") << ',' << membership[i] << '\n';
  }
  finish_output(nodes, nodes_path);

  const std::filesystem::path edges_path = cfg.output_dir / "edges.csv";
  std::ofstream edges = open_output(edges_path);
  edges << "source,target,weight,kind\n";
  for (const SupraEdge& edge : g.edges) {
    put_csv_field(edges, g.nodes[edge.source].id);
    edges << ',';
    put_csv_field(edges, g.nodes[edge.target].id);
    edges << ',' << edge.weight << ',' << (edge.kind == EdgeKind::intra ? "intra" : "inter")
          << '\n';
  }
  finish_output(edges, edges_path);
}

std::string render_report(const RunReport& report) {
  std::ostringstream out;
  out << "# stratanet run report\n";
  out << "status: " << report.status << '\n';
  out << "documents.parsed: " << report.documents_parsed << '\n';
  out << "documents.rejected: " << report.documents_rejected << '\n';
  out << "documents.empty_text: " << report.documents_empty_text << '\n';
  out << "documents.outside_layers: " << report.documents_outside_layers << '\n';
  out << "documents.duplicates: " << report.documents_duplicates << '\n';
  out << "documents.layered: " << report.documents_layered << '\n';
  out << "layers.count: " << report.layers.size() << '\n';
  for (std::size_t i = 0; i < report.layers.size(); ++i) {
    const LayerReport& layer = report.layers[i];
    out << "layer." << i << ".name: " << layer.name << '\n';
    out << "layer." << i << ".suffix: " << layer.suffix << '\n';
    out << "layer." << i << ".window: " << layer.start_date << ".." << layer.end_date << '\n';
    out << "layer." << i << ".documents: " << layer.documents << '\n';
    out << "layer." << i << ".vocabulary: " << layer.vocabulary << '\n';
    out << "layer." << i << ".nodes: " << layer.nodes << '\n';
    out << "layer." << i << ".edges: " << layer.edges << '\n';
  }
  out << "assembled.nodes: " << report.assembled_nodes << '\n';
  out << "assembled.edges: " << report.assembled_edges << '\n';
  out << "assembled.edges.intra: " << report.assembled_intra_edges << '\n';
  out << "assembled.edges.inter: " << report.assembled_inter_edges << '\n';
  out << "final.nodes: " << report.final_nodes << '\n';
  out << "final.edges: " << report.final_edges << '\n';
  out << "final.edges.intra: " << report.final_intra_edges << '\n';
  out << "final.edges.inter: " << report.final_inter_edges << '\n';
  out << "communities.count: " << report.community_count << '\n';
  if (report.has_communities) {
    out << "modularity.q: " << fmt_double(report.q, 9) << '\n';
    out << "modularity.resolution: " << fmt_double(report.resolution, 6) << '\n';
    out << "modularity.seed: " << report.seed << '\n';
  }
  for (const auto& [key, value] : report.config_echo) {
    out << "config." << key << ": " << value << '\n';
  }
  for (const StageTiming& t : report.timings) {
    out << "timing." << t.stage << "_s: " << fmt_double(t.seconds, 3) << '\n';
  }
  return out.str();
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << render_report(report);
  finish_output(out, path);
}

}  // namespace strata
