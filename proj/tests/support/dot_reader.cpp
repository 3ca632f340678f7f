#include "dot_reader.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/graphviz.hpp>
#include <stdexcept>

namespace ooscan::testing {

namespace {

struct VertexProps {
  std::string id;
  std::map<std::string, std::string> attrs;
};

struct EdgeProps {
  std::map<std::string, std::string> attrs;
};

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS, VertexProps,
                                    EdgeProps>;

// Property map that stores any attribute into the per-element map.
template <class Key, class Get>
class AttrMap : public boost::dynamic_property_map {
 public:
  AttrMap(std::string name, Get get) : name_(std::move(name)), get_(get) {}
  boost::any get(const boost::any& key) override { return get_(boost::any_cast<Key>(key))[name_]; }
  std::string get_string(const boost::any& key) override {
    return get_(boost::any_cast<Key>(key))[name_];
  }
  void put(const boost::any& key, const boost::any& value) override {
    get_(boost::any_cast<Key>(key))[name_] = boost::any_cast<std::string>(value);
  }
  const std::type_info& key() const override { return typeid(Key); }
  const std::type_info& value() const override { return typeid(std::string); }

 private:
  std::string name_;
  Get get_;
};

}  // namespace

DotGraph read_dot(const std::string& text) {
  Graph g;
  auto node_attrs = [&g](Graph::vertex_descriptor v) -> std::map<std::string, std::string>& {
    return g[v].attrs;
  };
  auto edge_attrs = [&g](Graph::edge_descriptor e) -> std::map<std::string, std::string>& {
    return g[e].attrs;
  };
  boost::dynamic_properties dp([&](const std::string& name, const boost::any& key,
                                   const boost::any&) -> std::unique_ptr<boost::dynamic_property_map> {
    if (key.type() == typeid(Graph::vertex_descriptor)) {
      return std::make_unique<AttrMap<Graph::vertex_descriptor, decltype(node_attrs)>>(name,
                                                                                       node_attrs);
    }
    if (key.type() == typeid(Graph::edge_descriptor)) {
      return std::make_unique<AttrMap<Graph::edge_descriptor, decltype(edge_attrs)>>(name,
                                                                                     edge_attrs);
    }
    return nullptr;  // graph-level attributes are ignored
  });
  dp.property("node_id", boost::get(&VertexProps::id, g));
  bool ok = false;
  try {
    ok = boost::read_graphviz(text, g, dp, "node_id");
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("invalid DOT: ") + e.what());
  }
  if (!ok) throw std::runtime_error("invalid DOT");
  DotGraph out;
  for (auto [it, end] = boost::vertices(g); it != end; ++it) out.nodes[g[*it].id] = g[*it].attrs;
  for (auto [it, end] = boost::edges(g); it != end; ++it) {
    out.edges.push_back({g[boost::source(*it, g)].id, g[boost::target(*it, g)].id, g[*it].attrs});
  }
  return out;
}

}  // namespace ooscan::testing
