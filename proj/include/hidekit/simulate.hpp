#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hidekit/algorithms.hpp"
#include "hidekit/graph.hpp"
#include "hidekit/infotheory.hpp"

namespace hidekit {

/// One agent's execution. `rounds` counts Stay/Move rounds; the terminating
/// decision is not a round, so an agent that terminates at once has rounds 0.
struct Trace {
  std::vector<Vertex> visited;  // visited[r] = position after r rounds
  long long moves = 0;
  long long rounds = 0;
  bool terminated = false;
  /// Stopped by AlgorithmSpec::truncate_after rather than by the agent.
  bool truncated = false;

  Vertex start() const { return visited.front(); }
  Vertex final() const { return visited.back(); }
};

/// Agent count per vertex; agents are indistinguishable.
using Configuration = std::map<Vertex, int>;

/// Canonical text key "v:count,v:count" in ascending vertex order.
std::string ConfigurationKey(const Configuration& c);
Configuration ConfigurationOf(const std::vector<Vertex>& positions);

struct RunResult {
  Configuration initial;
  Configuration final;
  std::vector<Trace> per_agent;
  long long energy = 0;    // max moves over agents
  long long makespan = 0;  // max rounds over agents
};

/// A memoryless deterministic agent returned to a vertex it already left:
/// it will repeat the cycle forever.
struct LoopCertificate {
  Vertex vertex = 0;
  long long first_round = 0;
  long long repeat_round = 0;
};

class NonTerminationError : public Error {
 public:
  NonTerminationError(const std::string& what, long long rounds,
                      std::optional<LoopCertificate> certificate)
      : Error(ErrorCode::kNonTermination, what), rounds_(rounds), certificate_(certificate) {}

  long long rounds() const { return rounds_; }
  const std::optional<LoopCertificate>& certificate() const { return certificate_; }

 private:
  long long rounds_;
  std::optional<LoopCertificate> certificate_;
};

inline constexpr long long kDefaultRoundCap = 1'000'000;

struct RunOptions {
  long long round_cap = kDefaultRoundCap;
};

/// Runs one agent. Deterministic in (g, algo, start, seed).
RunResult RunSingle(const PortLabeledGraph& g, const AlgorithmSpec& algo, Vertex start,
                    std::uint64_t seed, const RunOptions& options = {});

/// Runs k independent agents; agent i draws from ChildSeed(seed, i).
RunResult RunMulti(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                   const std::vector<Vertex>& starts, std::uint64_t seed,
                   const RunOptions& options = {});

Trace GoToMinId(const PortLabeledGraph& g, Vertex start);
Trace DfsMinId(const PortLabeledGraph& g, Vertex start);

inline constexpr double kDefaultTailThreshold = 1e-9;

/// Exact law of the final vertex from `start` (entry v - 1 for vertex v).
/// Deterministic algorithms give point masses. The randomized hider gives the
/// geometric mixture sum_t q (1 - q)^t K^t over its survival kernel K, cut
/// where the remaining mass drops below `tail_threshold` and renormalized;
/// with truncate_after = t the mixture is exact with the mass (1 - q)^t
/// placed on K^t.
Dist ExactFinalLaw(const PortLabeledGraph& g, const AlgorithmSpec& algo, Vertex start,
                   double tail_threshold = kDefaultTailThreshold);

/// Row x - 1 holds ExactFinalLaw(g, algo, x).
JointDist ExactFinalKernel(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                           double tail_threshold = kDefaultTailThreshold);

}  // namespace hidekit
