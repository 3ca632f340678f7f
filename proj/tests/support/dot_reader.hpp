#pragma once

// Reads Graphviz text with boost::read_graphviz. Used as the independent
// format parser for emitted documents.

#include <map>
#include <string>
#include <vector>

namespace ooscan::testing {

struct DotEdge {
  std::string from;
  std::string to;
  std::map<std::string, std::string> attrs;
};

struct DotGraph {
  std::map<std::string, std::map<std::string, std::string>> nodes;  // id -> attrs
  std::vector<DotEdge> edges;
};

/// Throws std::runtime_error when the text is not valid DOT.
DotGraph read_dot(const std::string& text);

}  // namespace ooscan::testing
