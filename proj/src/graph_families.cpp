#include <algorithm>
#include <string>

#include "hidekit/graph.hpp"
#include "hidekit/rng.hpp"

namespace hidekit {

namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kBadParameters, message);
}

}  // namespace

std::string_view GraphFamilyName(GraphFamily family) {
  switch (family) {
    case GraphFamily::kPath:
      return "path";
    case GraphFamily::kCycle:
      return "cycle";
    case GraphFamily::kClique:
      return "clique";
    case GraphFamily::kDoubleStar:
      return "double_star";
    case GraphFamily::kChainOfCliques:
      return "chain_of_cliques";
    case GraphFamily::kCompleteBipartite:
      return "complete_bipartite";
  }
  return "unknown";
}

GraphFamily ParseGraphFamily(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (GraphFamily f :
       {GraphFamily::kPath, GraphFamily::kCycle, GraphFamily::kClique, GraphFamily::kDoubleStar,
        GraphFamily::kChainOfCliques, GraphFamily::kCompleteBipartite}) {
    if (key == GraphFamilyName(f)) return f;
  }
  throw Error(ErrorCode::kBadParameters, "unknown graph family '" + std::string(name) + "'");
}

PortLabeledGraph MakePath(int n) {
  Require(n >= 2, "path needs n >= 2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return BuildGraph(edges);
}

PortLabeledGraph MakeCycle(int n) {
  Require(n >= 3, "cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(n, 1);
  return BuildGraph(edges);
}

PortLabeledGraph MakeClique(int n) {
  Require(n >= 2, "clique needs n >= 2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return BuildGraph(edges);
}

PortLabeledGraph MakeCompleteBipartite(int a, int b) {
  Require(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 1; u <= a; ++u) {
    for (Vertex v = a + 1; v <= a + b; ++v) edges.emplace_back(u, v);
  }
  return BuildGraph(edges);
}

PortLabeledGraph MakeDoubleStar(int d, int p) {
  Require(d >= 1, "double_star needs d >= 1");
  Require(p >= 1 && p <= d + 1, "double_star port p=" + std::to_string(p) +
                                    " must lie in 1..d+1=" + std::to_string(d + 1));
  const Vertex left = 1;
  const Vertex right = d + 2;
  std::vector<std::pair<Vertex, Vertex>> edges{{left, right}};
  std::vector<PortAssignment> ports{{left, right, p}, {right, left, p}};
  for (const Vertex center : {left, right}) {
    Port next = 1;
    for (int k = 1; k <= d; ++k) {
      if (next == p) ++next;
      const Vertex leaf = center + k;
      edges.emplace_back(center, leaf);
      ports.push_back({center, leaf, next++});
      ports.push_back({leaf, center, 1});
    }
  }
  return BuildGraph(edges, ports);
}

ChainOfCliques GenerateChainOfCliques(int x, int y, std::uint64_t seed) {
  Require(x >= 3, "chain_of_cliques needs x >= 3");
  Require(y >= 1, "chain_of_cliques needs y >= 1");
  Engine engine(seed);

  ChainOfCliques out;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> clique_edges(y);
  for (int c = 0; c < y; ++c) {
    std::vector<Vertex> members;
    for (int k = 1; k <= x; ++k) members.push_back(c * x + k);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        clique_edges[c].emplace_back(members[i], members[j]);
      }
    }
    out.cliques.push_back(std::move(members));
  }

  // Each clique edge may carry at most one bridgehead, so a middle clique
  // subdivides two distinct edges.
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<bool>> subdivided(y);
  for (int c = 0; c < y; ++c) subdivided[c].assign(clique_edges[c].size(), false);
  auto pick = [&](int c) {
    std::vector<int> free;
    for (std::size_t i = 0; i < clique_edges[c].size(); ++i) {
      if (!subdivided[c][i]) free.push_back(static_cast<int>(i));
    }
    const int chosen = free[UniformIndex(engine, static_cast<int>(free.size()))];
    subdivided[c][chosen] = true;
    return clique_edges[c][chosen];
  };
  for (int j = 0; j + 1 < y; ++j) {
    const Vertex left_head = y * x + 2 * j + 1;
    const Vertex right_head = y * x + 2 * j + 2;
    const auto [la, lb] = pick(j);
    const auto [ra, rb] = pick(j + 1);
    edges.insert(edges.end(), {{la, left_head},
                               {left_head, lb},
                               {ra, right_head},
                               {right_head, rb},
                               {left_head, right_head}});
    out.bridges.emplace_back(left_head, right_head);
  }
  for (int c = 0; c < y; ++c) {
    for (std::size_t i = 0; i < clique_edges[c].size(); ++i) {
      if (!subdivided[c][i]) edges.push_back(clique_edges[c][i]);
    }
  }
  out.graph = BuildGraph(edges);
  return out;
}

PortLabeledGraph GenerateFamily(const GraphFamilySpec& spec) {
  switch (spec.family) {
    case GraphFamily::kPath:
      return MakePath(spec.n);
    case GraphFamily::kCycle:
      return MakeCycle(spec.n);
    case GraphFamily::kClique:
      return MakeClique(spec.n);
    case GraphFamily::kCompleteBipartite:
      return MakeCompleteBipartite(spec.a, spec.b);
    case GraphFamily::kDoubleStar:
      return MakeDoubleStar(spec.d, spec.p);
    case GraphFamily::kChainOfCliques:
      return GenerateChainOfCliques(spec.x, spec.y, spec.seed).graph;
  }
  throw Error(ErrorCode::kBadParameters, "unknown graph family");
}

}  // namespace hidekit
