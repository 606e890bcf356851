#include <fstream>
#include <sstream>
#include <string>

#include "hidekit/graph.hpp"
#include "json.hpp"

namespace hidekit {

namespace {

using nlohmann::json;

[[noreturn]] void Reject(const std::string& message) {
  throw Error(ErrorCode::kBadConfig, "graph json: " + message);
}

int ToInt(const json& value, const std::string& field) {
  if (!value.is_number_integer()) Reject("'" + field + "' must be an integer");
  return value.get<int>();
}

}  // namespace

std::string GraphToJson(const PortLabeledGraph& g) {
  // Keys are emitted in numeric vertex order, not json's lexicographic order.
  std::ostringstream out;
  out << "{\"n\":" << g.num_vertices() << ",\"adj\":{";
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (v > 1) out << ',';
    out << '"' << v << "\":[";
    bool first = true;
    for (const PortEdge& e : g.ports(v)) {
      if (!first) out << ',';
      first = false;
      out << "{\"port\":" << e.port << ",\"to\":" << e.to << '}';
    }
    out << ']';
  }
  out << "}}\n";
  return out.str();
}

PortLabeledGraph GraphFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Reject(e.what());
  }
  if (!doc.is_object()) Reject("top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "adj") Reject("unknown key '" + key + "'");
  }
  if (!doc.contains("n") || !doc.contains("adj")) Reject("requires 'n' and 'adj'");
  const int n = ToInt(doc["n"], "n");
  if (n < 1) Reject("'n' must be positive");
  const json& adj = doc["adj"];
  if (!adj.is_object()) Reject("'adj' must be an object");

  std::vector<std::vector<PortEdge>> adjacency(n);
  std::vector<bool> present(n, false);
  for (const auto& [key, list] : adj.items()) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || v < 1 || v > n) Reject("bad vertex key '" + key + "'");
    present[v - 1] = true;
    if (!list.is_array()) Reject("adjacency of vertex " + key + " must be an array");
    for (const json& item : list) {
      if (!item.is_object()) Reject("port entries must be objects");
      for (const auto& [field, _] : item.items()) {
        if (field != "port" && field != "to") Reject("unknown key '" + field + "'");
      }
      if (!item.contains("port") || !item.contains("to")) {
        Reject("port entries need 'port' and 'to'");
      }
      adjacency[v - 1].push_back({ToInt(item["port"], "port"), ToInt(item["to"], "to")});
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!present[i]) Reject("vertex " + std::to_string(i + 1) + " missing from 'adj'");
  }
  return PortLabeledGraph::FromAdjacency(std::move(adjacency));
}

PortLabeledGraph LoadGraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadConfig, "cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return GraphFromJson(buffer.str());
}

void SaveGraph(const PortLabeledGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kBadConfig, "cannot write graph file " + path);
  out << GraphToJson(g);
}

}  // namespace hidekit
