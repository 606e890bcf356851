#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hidekit/error.hpp"

namespace hidekit {

/// Vertex ids are 1-based, matching the labels agents can read.
using Vertex = int;
/// Ports at a vertex v run over 1..deg(v).
using Port = int;

struct PortEdge {
  Port port;
  Vertex to;

  friend bool operator==(const PortEdge&, const PortEdge&) = default;
};

/// Explicit port choice for one edge endpoint: the edge (from, to) leaves
/// `from` through `port`.
struct PortAssignment {
  Vertex from;
  Vertex to;
  Port port;
};

/// Simple connected undirected graph whose edges carry a local label at each
/// endpoint. Immutable once built; every constructor path validates.
class PortLabeledGraph {
 public:
  /// Adjacency is indexed by vertex id - 1 and each list is ordered by port.
  /// Throws Error on any invariant violation.
  static PortLabeledGraph FromAdjacency(std::vector<std::vector<PortEdge>> adjacency);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return num_edges_; }
  int degree(Vertex v) const { return static_cast<int>(at(v).size()); }

  /// Neighbor reached from v through `port`.
  Vertex neighbor(Vertex v, Port port) const;
  /// Port at v leading to u, or nullopt when not adjacent.
  std::optional<Port> port_to(Vertex v, Vertex u) const;
  bool adjacent(Vertex u, Vertex v) const { return port_to(u, v).has_value(); }

  /// Edges at v in ascending port order.
  const std::vector<PortEdge>& ports(Vertex v) const { return at(v); }

  bool contains(Vertex v) const { return v >= 1 && v <= num_vertices(); }
  void check_vertex(Vertex v) const;

  /// Undirected edges as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const PortLabeledGraph&, const PortLabeledGraph&) = default;

 private:
  const std::vector<PortEdge>& at(Vertex v) const;

  std::vector<std::vector<PortEdge>> adjacency_;
  int num_edges_ = 0;
};

/// Builds a graph from an undirected edge list. Without `ports`, the ports
/// at every vertex follow ascending neighbor id. With `ports`, every edge
/// endpoint must be assigned exactly once.
PortLabeledGraph BuildGraph(const std::vector<std::pair<Vertex, Vertex>>& edges,
                            const std::vector<PortAssignment>& ports = {});

enum class GraphFamily {
  kPath,
  kCycle,
  kClique,
  kDoubleStar,
  kChainOfCliques,
  kCompleteBipartite,
};

std::string_view GraphFamilyName(GraphFamily family);
/// Accepts both `chain_of_cliques` and `chain-of-cliques` spellings.
GraphFamily ParseGraphFamily(std::string_view name);

struct GraphFamilySpec {
  GraphFamily family = GraphFamily::kPath;
  // path/cycle/clique: n.  complete_bipartite: a, b.  double_star: d, p.
  // chain_of_cliques: x, y, seed.
  int n = 0;
  int a = 0;
  int b = 0;
  int d = 0;
  int p = 0;
  int x = 0;
  int y = 0;
  std::uint64_t seed = 0;
};

/// Generated graph together with the structure the lower-bound experiments
/// need to know about it.
struct ChainOfCliques {
  PortLabeledGraph graph;
  /// Original vertices of each clique, in chain order.
  std::vector<std::vector<Vertex>> cliques;
  /// Bridge endpoints (left bridgehead, right bridgehead) per junction.
  std::vector<std::pair<Vertex, Vertex>> bridges;
};

PortLabeledGraph GenerateFamily(const GraphFamilySpec& spec);
ChainOfCliques GenerateChainOfCliques(int x, int y, std::uint64_t seed);

PortLabeledGraph MakePath(int n);
PortLabeledGraph MakeCycle(int n);
PortLabeledGraph MakeClique(int n);
PortLabeledGraph MakeCompleteBipartite(int a, int b);
/// Two stars with `d` leaves each whose centers are joined by a bridge that
/// carries port `p` at both centers. Centers are vertices 1 and d + 2.
PortLabeledGraph MakeDoubleStar(int d, int p);

// Metrics. All exact, BFS based.
std::vector<int> BfsDistances(const PortLabeledGraph& g, Vertex source);
int Distance(const PortLabeledGraph& g, Vertex u, Vertex v);
int Diameter(const PortLabeledGraph& g);
/// First (u, v) in id order with d(u, v) = diameter.
std::pair<Vertex, Vertex> DiameterPair(const PortLabeledGraph& g);
/// {y : d(center, y) < radius}, ascending.
std::vector<Vertex> Ball(const PortLabeledGraph& g, Vertex center, int radius);
/// Color classes (0/1) per vertex, or nullopt when the graph has an odd cycle.
std::optional<std::vector<int>> Bipartition(const PortLabeledGraph& g);

// JSON interchange: {"n": int, "adj": {"<v>": [{"port": p, "to": u}, ...]}}.
std::string GraphToJson(const PortLabeledGraph& g);
/// Parses and re-validates every invariant. Unknown keys are rejected.
PortLabeledGraph GraphFromJson(const std::string& text);
PortLabeledGraph LoadGraph(const std::string& path);
void SaveGraph(const PortLabeledGraph& g, const std::string& path);

}  // namespace hidekit
