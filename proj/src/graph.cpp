#include "hidekit/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

namespace hidekit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDisconnectedGraph:
      return "DisconnectedGraph";
    case ErrorCode::kDuplicateEdge:
      return "DuplicateEdge";
    case ErrorCode::kSelfLoop:
      return "SelfLoop";
    case ErrorCode::kBadPortPermutation:
      return "BadPortPermutation";
    case ErrorCode::kBadVertex:
      return "BadVertex";
    case ErrorCode::kBadParameters:
      return "BadParameters";
    case ErrorCode::kInvalidDistribution:
      return "InvalidDistribution";
    case ErrorCode::kMismatchedSupport:
      return "MismatchedSupport";
    case ErrorCode::kZeroInQ:
      return "ZeroInQ";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kBadTerminationProbability:
      return "BadTerminationProbability";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kNotMixedWithinCap:
      return "NotMixedWithinCap";
    case ErrorCode::kRuleMissingDegree:
      return "RuleMissingDegree";
    case ErrorCode::kNonTermination:
      return "NonTermination";
    case ErrorCode::kUnsupportedAlgorithm:
      return "UnsupportedAlgorithm";
    case ErrorCode::kBadVertices:
      return "BadVertices";
    case ErrorCode::kNotBipartite:
      return "NotBipartite";
    case ErrorCode::kBadConfig:
      return "BadConfig";
  }
  return "Unknown";
}

namespace {

std::string EdgeName(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

PortLabeledGraph PortLabeledGraph::FromAdjacency(std::vector<std::vector<PortEdge>> adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n == 0) {
    throw Error(ErrorCode::kBadParameters, "graph has no vertices");
  }
  long long endpoint_count = 0;
  for (Vertex v = 1; v <= n; ++v) {
    auto& list = adjacency[v - 1];
    std::set<Vertex> seen;
    for (const PortEdge& e : list) {
      if (e.to < 1 || e.to > n) {
        throw Error(ErrorCode::kBadVertex, "vertex " + std::to_string(v) + " lists neighbor " +
                                               std::to_string(e.to) + " outside 1.." +
                                               std::to_string(n));
      }
      if (e.to == v) {
        throw Error(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(v));
      }
      if (!seen.insert(e.to).second) {
        throw Error(ErrorCode::kDuplicateEdge, "parallel edge " + EdgeName(v, e.to));
      }
    }
    std::sort(list.begin(), list.end(),
              [](const PortEdge& l, const PortEdge& r) { return l.port < r.port; });
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].port != static_cast<Port>(i + 1)) {
        throw Error(ErrorCode::kBadPortPermutation, "ports at vertex " + std::to_string(v) +
                                                        " are not exactly 1.." +
                                                        std::to_string(list.size()));
      }
    }
    endpoint_count += static_cast<long long>(list.size());
  }
  for (Vertex v = 1; v <= n; ++v) {
    for (const PortEdge& e : adjacency[v - 1]) {
      const auto& back = adjacency[e.to - 1];
      bool found =
          std::any_of(back.begin(), back.end(), [v](const PortEdge& b) { return b.to == v; });
      if (!found) {
        throw Error(ErrorCode::kBadPortPermutation,
                    "edge " + EdgeName(v, e.to) + " is missing at vertex " + std::to_string(e.to));
      }
    }
  }

  std::vector<bool> reached(n, false);
  std::deque<Vertex> frontier{1};
  reached[0] = true;
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop_front();
    for (const PortEdge& e : adjacency[v - 1]) {
      if (!reached[e.to - 1]) {
        reached[e.to - 1] = true;
        frontier.push_back(e.to);
      }
    }
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (!reached[v - 1]) {
      throw Error(ErrorCode::kDisconnectedGraph,
                  "vertex " + std::to_string(v) + " is unreachable from vertex 1");
    }
  }

  PortLabeledGraph g;
  g.adjacency_ = std::move(adjacency);
  g.num_edges_ = static_cast<int>(endpoint_count / 2);
  return g;
}

const std::vector<PortEdge>& PortLabeledGraph::at(Vertex v) const {
  check_vertex(v);
  return adjacency_[v - 1];
}

void PortLabeledGraph::check_vertex(Vertex v) const {
  if (!contains(v)) {
    throw Error(ErrorCode::kBadVertex,
                "vertex " + std::to_string(v) + " outside 1.." + std::to_string(num_vertices()));
  }
}

Vertex PortLabeledGraph::neighbor(Vertex v, Port port) const {
  const auto& list = at(v);
  if (port < 1 || port > static_cast<Port>(list.size())) {
    throw Error(ErrorCode::kBadPortPermutation,
                "vertex " + std::to_string(v) + " has no port " + std::to_string(port));
  }
  return list[port - 1].to;
}

std::optional<Port> PortLabeledGraph::port_to(Vertex v, Vertex u) const {
  for (const PortEdge& e : at(v)) {
    if (e.to == u) return e.port;
  }
  return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> PortLabeledGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(num_edges_);
  for (Vertex v = 1; v <= num_vertices(); ++v) {
    for (const PortEdge& e : adjacency_[v - 1]) {
      if (v < e.to) out.emplace_back(v, e.to);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PortLabeledGraph BuildGraph(const std::vector<std::pair<Vertex, Vertex>>& edges,
                            const std::vector<PortAssignment>& ports) {
  int n = 0;
  for (const auto& [u, v] : edges) {
    if (u < 1 || v < 1) {
      throw Error(ErrorCode::kBadVertex, "edge " + EdgeName(u, v) + " has an id below 1");
    }
    n = std::max({n, u, v});
  }
  if (n == 0) throw Error(ErrorCode::kBadParameters, "empty edge list");

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::vector<Vertex>> neighbors(n);
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw Error(ErrorCode::kSelfLoop, "edge " + EdgeName(u, v) + " is a self-loop");
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::kDuplicateEdge, "edge " + EdgeName(u, v) + " listed twice");
    }
    neighbors[u - 1].push_back(v);
    neighbors[v - 1].push_back(u);
  }

  std::vector<std::vector<PortEdge>> adjacency(n);
  if (ports.empty()) {
    for (int i = 0; i < n; ++i) {
      auto& nb = neighbors[i];
      std::sort(nb.begin(), nb.end());
      for (std::size_t k = 0; k < nb.size(); ++k) {
        adjacency[i].push_back({static_cast<Port>(k + 1), nb[k]});
      }
    }
  } else {
    std::map<std::pair<Vertex, Vertex>, Port> assigned;
    for (const PortAssignment& a : ports) {
      if (!seen.count(std::minmax(a.from, a.to))) {
        throw Error(ErrorCode::kBadPortPermutation,
                    "port assigned to non-edge " + EdgeName(a.from, a.to));
      }
      if (!assigned.emplace(std::make_pair(a.from, a.to), a.port).second) {
        throw Error(ErrorCode::kBadPortPermutation,
                    "endpoint " + EdgeName(a.from, a.to) + " assigned twice");
      }
      adjacency[a.from - 1].push_back({a.port, a.to});
    }
    for (const auto& [u, v] : seen) {
      if (!assigned.count({u, v}) || !assigned.count({v, u})) {
        throw Error(ErrorCode::kBadPortPermutation,
                    "edge " + EdgeName(u, v) + " lacks a port at one endpoint");
      }
    }
  }
  return PortLabeledGraph::FromAdjacency(std::move(adjacency));
}

std::vector<int> BfsDistances(const PortLabeledGraph& g, Vertex source) {
  g.check_vertex(source);
  std::vector<int> dist(g.num_vertices() + 1, -1);
  std::deque<Vertex> frontier{source};
  dist[source] = 0;
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop_front();
    for (const PortEdge& e : g.ports(v)) {
      if (dist[e.to] < 0) {
        dist[e.to] = dist[v] + 1;
        frontier.push_back(e.to);
      }
    }
  }
  return dist;
}

int Distance(const PortLabeledGraph& g, Vertex u, Vertex v) {
  g.check_vertex(v);
  return BfsDistances(g, u)[v];
}

int Diameter(const PortLabeledGraph& g) {
  int best = 0;
  for (Vertex u = 1; u <= g.num_vertices(); ++u) {
    const auto dist = BfsDistances(g, u);
    best = std::max(best, *std::max_element(dist.begin() + 1, dist.end()));
  }
  return best;
}

std::pair<Vertex, Vertex> DiameterPair(const PortLabeledGraph& g) {
  const int diameter = Diameter(g);
  for (Vertex u = 1; u <= g.num_vertices(); ++u) {
    const auto dist = BfsDistances(g, u);
    for (Vertex v = u + 1; v <= g.num_vertices(); ++v) {
      if (dist[v] == diameter) return {u, v};
    }
  }
  return {1, 1};  // single-vertex graph
}

std::vector<Vertex> Ball(const PortLabeledGraph& g, Vertex center, int radius) {
  const auto dist = BfsDistances(g, center);
  std::vector<Vertex> out;
  for (Vertex y = 1; y <= g.num_vertices(); ++y) {
    if (dist[y] < radius) out.push_back(y);
  }
  return out;
}

std::optional<std::vector<int>> Bipartition(const PortLabeledGraph& g) {
  const auto dist = BfsDistances(g, 1);
  std::vector<int> color(g.num_vertices() + 1, 0);
  for (Vertex v = 1; v <= g.num_vertices(); ++v) color[v] = dist[v] % 2;
  for (const auto& [u, v] : g.edges()) {
    if (color[u] == color[v]) return std::nullopt;
  }
  return color;
}

}  // namespace hidekit
