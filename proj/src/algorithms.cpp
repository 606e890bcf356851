#include "hidekit/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "hidekit/markov.hpp"

namespace hidekit {

std::string_view AlgorithmKindName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kGoToMinId:
      return "go_to_min_id";
    case AlgorithmKind::kDfsMinId:
      return "dfs_min_id";
    case AlgorithmKind::kRandomWalkHider:
      return "random_walk_hider";
    case AlgorithmKind::kDeterministicNoMemory:
      return "deterministic_no_memory";
  }
  return "unknown";
}

AlgorithmKind ParseAlgorithmKind(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "go_to_min_id" || key == "gotominid") return AlgorithmKind::kGoToMinId;
  if (key == "dfs_min_id" || key == "dfs") return AlgorithmKind::kDfsMinId;
  if (key == "random_walk_hider" || key == "rw_hider") return AlgorithmKind::kRandomWalkHider;
  if (key == "deterministic_no_memory" || key == "det_no_memory") {
    return AlgorithmKind::kDeterministicNoMemory;
  }
  throw Error(ErrorCode::kBadConfig, "unknown algorithm '" + std::string(name) + "'");
}

Resources AlgorithmSpec::resources() const {
  switch (kind) {
    case AlgorithmKind::kGoToMinId:
      return {
          .knows_topology = true, .has_memory = false, .has_randomness = false, .knows_n = true};
    case AlgorithmKind::kDfsMinId:
      return {
          .knows_topology = false, .has_memory = true, .has_randomness = false, .knows_n = false};
    case AlgorithmKind::kRandomWalkHider:
      return {
          .knows_topology = false, .has_memory = false, .has_randomness = true, .knows_n = true};
    case AlgorithmKind::kDeterministicNoMemory:
      return {
          .knows_topology = false, .has_memory = false, .has_randomness = false, .knows_n = true};
  }
  return {};
}

void AlgorithmSpec::Validate() const {
  if (kind == AlgorithmKind::kRandomWalkHider) CheckTerminationProbability(q);
  if (kind == AlgorithmKind::kDeterministicNoMemory) {
    for (const auto& [degree, port] : rule) {
      if (degree < 1 || port < 1 || port > degree) {
        throw Error(ErrorCode::kBadParameters, "rule maps degree " + std::to_string(degree) +
                                                   " to invalid port " + std::to_string(port));
      }
    }
  }
  if (truncate_after && *truncate_after < 0) {
    throw Error(ErrorCode::kBadParameters, "truncate_after must be non-negative");
  }
}

GoToMinIdAgent::GoToMinIdAgent(const PortLabeledGraph& g) : next_port_(g.num_vertices() + 1, 0) {
  const auto dist = BfsDistances(g, 1);
  for (Vertex v = 2; v <= g.num_vertices(); ++v) {
    Vertex best = 0;
    for (const PortEdge& e : g.ports(v)) {
      if (dist[e.to] == dist[v] - 1 && (best == 0 || e.to < best)) best = e.to;
    }
    next_port_[v] = *g.port_to(v, best);
  }
}

AgentDecision GoToMinIdAgent::Step(const LocalView& view) const {
  const Port p = next_port_.at(view.vertex);
  return p == 0 ? AgentDecision::Terminate() : AgentDecision::Move(p);
}

AgentDecision DfsMinIdAgent::Step(const LocalView& view) {
  const Vertex here = view.vertex;
  if (pending_ != Pending::kNone) {
    const Vertex from = pending_from_;
    nodes_[from].known[pending_port_] = here;
    const bool discovered = !nodes_.count(here);
    Node& node = nodes_[here];
    if (discovered) {
      node.degree = view.degree;
      node.parent_port = view.arrival_port;
    }
    node.known[*view.arrival_port] = from;
    const Pending arrived_by = pending_;
    pending_ = Pending::kNone;
    if (arrived_by == Pending::kProbe && !discovered) {
      pending_ = Pending::kBounce;
      pending_from_ = here;
      pending_port_ = *view.arrival_port;
      return AgentDecision::Move(pending_port_);
    }
  } else if (nodes_.empty()) {
    nodes_[here].degree = view.degree;
  }

  if (!returning_) return Explore(here);
  if (return_index_ == return_path_.size()) return AgentDecision::Terminate();
  pending_ = Pending::kReturn;
  pending_from_ = here;
  pending_port_ = return_path_[return_index_++];
  return AgentDecision::Move(pending_port_);
}

AgentDecision DfsMinIdAgent::Explore(Vertex v) {
  Node& node = nodes_[v];
  while (node.next_probe <= node.degree) {
    const Port p = node.next_probe++;
    if (p == node.parent_port || node.known.count(p)) continue;
    pending_ = Pending::kProbe;
    pending_from_ = v;
    pending_port_ = p;
    return AgentDecision::Move(p);
  }
  if (node.parent_port) {
    pending_ = Pending::kBacktrack;
    pending_from_ = v;
    pending_port_ = *node.parent_port;
    return AgentDecision::Move(pending_port_);
  }
  // Back at the root with every port explored.
  returning_ = true;
  return_path_ = LearnedShortestPath(v, nodes_.begin()->first);
  return_index_ = 0;
  if (return_path_.empty()) return AgentDecision::Terminate();
  pending_ = Pending::kReturn;
  pending_from_ = v;
  pending_port_ = return_path_[return_index_++];
  return AgentDecision::Move(pending_port_);
}

std::vector<Port> DfsMinIdAgent::LearnedShortestPath(Vertex from, Vertex to) const {
  std::map<Vertex, std::pair<Vertex, Port>> parent;
  std::deque<Vertex> frontier{from};
  parent[from] = {0, 0};
  while (!frontier.empty() && !parent.count(to)) {
    const Vertex v = frontier.front();
    frontier.pop_front();
    // Ascending port order gives a canonical path.
    for (const auto& [port, u] : nodes_.at(v).known) {
      if (!parent.count(u)) {
        parent[u] = {v, port};
        frontier.push_back(u);
      }
    }
  }
  std::vector<Port> path;
  for (Vertex v = to; v != from; v = parent.at(v).first) path.push_back(parent.at(v).second);
  std::reverse(path.begin(), path.end());
  return path;
}

AgentDecision RandomWalkHiderStep(const DegreeView& view, double q, BranchDraw draw) {
  CheckTerminationProbability(q);
  if (draw.branch < q) return AgentDecision::Terminate();
  if (draw.branch < q + 0.5) return AgentDecision::Stay();
  const int port = static_cast<int>(draw.port * view.degree) + 1;
  return AgentDecision::Move(std::min(port, view.degree));
}

AgentDecision DeterministicNoMemoryStep(const DegreeView& view, const DegreeRule& rule) {
  const auto it = rule.find(view.degree);
  if (it == rule.end()) {
    throw Error(ErrorCode::kRuleMissingDegree,
                "rule has no entry for degree " + std::to_string(view.degree));
  }
  return AgentDecision::Move(it->second);
}

RandomWalkHiderAgent::RandomWalkHiderAgent(double q) : q_(q) { CheckTerminationProbability(q); }

double SuggestedTerminationProbability(int n) {
  if (n < 2) return 0.5;
  const double n3 = static_cast<double>(n) * n * n;
  return std::min(0.5, 1.0 / (n3 * std::log2(static_cast<double>(n))));
}

}  // namespace hidekit
