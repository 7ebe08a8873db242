#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// Minimal non-validating XML reader, just enough to re-parse the exporter's
/// GEXF and GraphML output for round-trip checks. Supports elements,
/// attributes, character data, comments, processing instructions, and the
/// five predefined entities plus numeric character references. No DTDs, no
/// CDATA. Throws std::runtime_error on anything it cannot read.
namespace xml_lite {

struct Node {
  std::string name;  // includes any namespace prefix, e.g. "viz:position"
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::string text;  // concatenated character data

  /// First attribute with this name; nullptr when absent.
  const std::string* attr(std::string_view attr_name) const;

  /// First direct child element with this name; nullptr when absent.
  const Node* child(std::string_view child_name) const;

  /// All direct child elements with this name.
  std::vector<const Node*> children_named(std::string_view child_name) const;
};

/// Parses one document; returns its root element.
Node parse(std::string_view document);

}  // namespace xml_lite
