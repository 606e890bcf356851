#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hidekit/graph.hpp"
#include "hidekit/rng.hpp"

namespace hidekit::testing {

struct NamedGraph {
  std::string name;
  PortLabeledGraph graph;
};

/// Paths, cycles, cliques, double stars and small chains of cliques.
inline std::vector<NamedGraph> StandardGraphSet() {
  std::vector<NamedGraph> out;
  for (int n = 2; n <= 8; ++n) out.push_back({"P" + std::to_string(n), MakePath(n)});
  for (int n = 3; n <= 8; ++n) out.push_back({"C" + std::to_string(n), MakeCycle(n)});
  for (int n = 3; n <= 6; ++n) out.push_back({"K" + std::to_string(n), MakeClique(n)});
  for (int d = 2; d <= 4; ++d) {
    for (int p = 1; p <= d + 1; ++p) {
      out.push_back({"double_star(" + std::to_string(d) + "," + std::to_string(p) + ")",
                     MakeDoubleStar(d, p)});
    }
  }
  for (int x = 3; x <= 5; ++x) {
    for (int y = 1; y <= 3; ++y) {
      out.push_back({"chain(" + std::to_string(x) + "," + std::to_string(y) + ")",
                     GenerateChainOfCliques(x, y, 1000 + 10 * x + y).graph});
    }
  }
  return out;
}

/// Connected graph: random spanning tree plus extra edges, with every
/// vertex's ports shuffled.
inline PortLabeledGraph RandomConnectedGraph(int n, double extra_edge_prob, std::uint64_t seed) {
  Engine engine(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<bool>> has(n + 1, std::vector<bool>(n + 1, false));
  auto add = [&](Vertex u, Vertex v) {
    if (u == v || has[u][v]) return;
    has[u][v] = has[v][u] = true;
    edges.emplace_back(u, v);
  };
  for (Vertex v = 2; v <= n; ++v) add(v, 1 + UniformIndex(engine, v - 1));
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (Uniform01(engine) < extra_edge_prob) add(u, v);
    }
  }
  std::vector<std::vector<Vertex>> nb(n + 1);
  for (const auto& [u, v] : edges) {
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  std::vector<PortAssignment> ports;
  for (Vertex v = 1; v <= n; ++v) {
    std::vector<Port> perm(nb[v].size());
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[UniformIndex(engine, static_cast<int>(i))]);
    }
    for (std::size_t i = 0; i < nb[v].size(); ++i) ports.push_back({v, nb[v][i], perm[i]});
  }
  return BuildGraph(edges, ports);
}

/// All-pairs distances by Floyd-Warshall over the edge list, independent of
/// the BFS used by the library.
inline std::vector<std::vector<int>> FloydWarshall(const PortLabeledGraph& g) {
  const int n = g.num_vertices();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(n + 1, inf));
  for (Vertex v = 1; v <= n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

}  // namespace hidekit::testing
