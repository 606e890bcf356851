#pragma once

// Hiding algorithms as agent behaviors.
//
// Each agent class exposes a Step() whose argument is the only information
// its model allows. Topology-unaware agents never receive the graph; the
// memoryless ones receive a DegreeView without a vertex id and have const
// Step(); only the randomized one receives a random draw.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hidekit/graph.hpp"

namespace hidekit {

/// What an agent observes at the start of a round.
struct LocalView {
  Vertex vertex = 0;
  int degree = 0;
  std::optional<Port> arrival_port;
  std::optional<int> n_hint;
  long long round = 0;
};

/// The part of a LocalView a memoryless agent may base its decision on.
struct DegreeView {
  int degree = 0;
  std::optional<int> n_hint;
};

enum class Action { kStay, kMove, kTerminate };

struct AgentDecision {
  Action action = Action::kStay;
  Port port = 0;  // meaningful for kMove only

  static AgentDecision Stay() { return {Action::kStay, 0}; }
  static AgentDecision Move(Port p) { return {Action::kMove, p}; }
  static AgentDecision Terminate() { return {Action::kTerminate, 0}; }

  friend bool operator==(const AgentDecision&, const AgentDecision&) = default;
};

enum class AlgorithmKind { kGoToMinId, kDfsMinId, kRandomWalkHider, kDeterministicNoMemory };

struct Resources {
  bool knows_topology = false;
  bool has_memory = false;
  bool has_randomness = false;
  bool knows_n = false;

  friend bool operator==(const Resources&, const Resources&) = default;
};

/// Degree -> port map of a deterministic memoryless agent.
using DegreeRule = std::map<int, Port>;

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kGoToMinId;
  double q = 0.0;
  DegreeRule rule;
  /// Hard stop after this many rounds; the agent's position then is final.
  std::optional<long long> truncate_after;

  static AlgorithmSpec GoToMinId() { return {AlgorithmKind::kGoToMinId, 0.0, {}, {}}; }
  static AlgorithmSpec DfsMinId() { return {AlgorithmKind::kDfsMinId, 0.0, {}, {}}; }
  static AlgorithmSpec RandomWalkHider(double q) {
    return {AlgorithmKind::kRandomWalkHider, q, {}, {}};
  }
  static AlgorithmSpec DeterministicNoMemory(DegreeRule rule) {
    return {AlgorithmKind::kDeterministicNoMemory, 0.0, std::move(rule), {}};
  }
  AlgorithmSpec Truncated(long long rounds) const {
    AlgorithmSpec copy = *this;
    copy.truncate_after = rounds;
    return copy;
  }

  Resources resources() const;
  bool deterministic() const { return kind != AlgorithmKind::kRandomWalkHider; }
  /// Throws kBadTerminationProbability / kBadParameters on invalid fields.
  void Validate() const;
};

std::string_view AlgorithmKindName(AlgorithmKind kind);
/// Accepts the canonical names and the CLI spellings (go-to-min-id, dfs,
/// rw-hider, det-no-memory).
AlgorithmKind ParseAlgorithmKind(std::string_view name);

/// Known topology: walk a shortest path to vertex 1, breaking ties toward the
/// smallest next-vertex id.
class GoToMinIdAgent {
 public:
  explicit GoToMinIdAgent(const PortLabeledGraph& g);
  AgentDecision Step(const LocalView& view) const;

 private:
  std::vector<Port> next_port_;  // by vertex id; 0 at the target
};

/// Unknown topology with memory: DFS through ports in ascending order, then a
/// shortest path in the learned map to the smallest id seen.
class DfsMinIdAgent {
 public:
  AgentDecision Step(const LocalView& view);

 private:
  enum class Pending { kNone, kProbe, kBounce, kBacktrack, kReturn };
  struct Node {
    int degree = 0;
    std::optional<Port> parent_port;
    Port next_probe = 1;
    std::map<Port, Vertex> known;
  };

  AgentDecision Explore(Vertex v);
  std::vector<Port> LearnedShortestPath(Vertex from, Vertex to) const;

  std::map<Vertex, Node> nodes_;
  Pending pending_ = Pending::kNone;
  Vertex pending_from_ = 0;
  Port pending_port_ = 0;
  bool returning_ = false;
  std::vector<Port> return_path_;
  std::size_t return_index_ = 0;
};

/// Two independent uniforms in [0, 1): one picks the branch, one the port.
struct BranchDraw {
  double branch = 0.0;
  double port = 0.0;
};

/// One round of the no-memory randomized hider: terminate with probability q,
/// else stay with probability 1/2, else move through a uniform port.
AgentDecision RandomWalkHiderStep(const DegreeView& view, double q, BranchDraw draw);

/// A memoryless deterministic agent: moves through rule[degree], never
/// terminates.
AgentDecision DeterministicNoMemoryStep(const DegreeView& view, const DegreeRule& rule);

class RandomWalkHiderAgent {
 public:
  explicit RandomWalkHiderAgent(double q);
  AgentDecision Step(const DegreeView& view, BranchDraw draw) const {
    return RandomWalkHiderStep(view, q_, draw);
  }

 private:
  double q_;
};

class DegreeRuleAgent {
 public:
  explicit DegreeRuleAgent(DegreeRule rule) : rule_(std::move(rule)) {}
  AgentDecision Step(const DegreeView& view) const {
    return DeterministicNoMemoryStep(view, rule_);
  }

 private:
  DegreeRule rule_;
};

/// Suggested termination probability for the randomized hider on n vertices,
/// 1 / (n^3 log2 n).
double SuggestedTerminationProbability(int n);

}  // namespace hidekit
