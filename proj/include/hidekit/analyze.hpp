#pragma once

// The adversary's side: joint laws of (initial, final) positions, the hiding
// quality they imply, and the lower-bound experiments built on top.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hidekit/algorithms.hpp"
#include "hidekit/graph.hpp"
#include "hidekit/infotheory.hpp"
#include "hidekit/simulate.hpp"

namespace hidekit {

/// Joint law with labeled outcomes: rows are initial configurations, columns
/// final configurations.
struct LabeledJoint {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  JointDist probs;
};

/// Law over initial placements of k agents.
struct StartPrior {
  std::vector<std::vector<Vertex>> placements;
  std::vector<double> probs;
};

/// Uniform over all vertices.
Dist UniformPrior(const PortLabeledGraph& g);
/// Mass 1/2 at u and at v.
Dist TwoPointPrior(const PortLabeledGraph& g, Vertex u, Vertex v);
/// Every agent starts together at a vertex drawn from `prior`.
StartPrior AllAgentsAt(const Dist& prior, int agents);

/// joint(x, y) = prior(x) Pr[X_T = y | X_0 = x], vertices on both axes.
JointDist ExactJoint(const PortLabeledGraph& g, const AlgorithmSpec& algo, const Dist& prior,
                     double tail_threshold = kDefaultTailThreshold);

/// Plug-in estimate from `samples` seeded runs. The plug-in mutual
/// information is biased upward for small sample counts. The result does not
/// depend on `jobs`.
LabeledJoint McJoint(const PortLabeledGraph& g, const AlgorithmSpec& algo, const StartPrior& prior,
                     long long samples, std::uint64_t seed, int jobs = 1);

enum class EvaluationMode { kExact, kMonteCarlo };
std::string_view EvaluationModeName(EvaluationMode mode);

struct HidingReport {
  double h_x0 = 0.0;
  double mi = 0.0;
  double uc = 0.0;
  EvaluationMode mode = EvaluationMode::kExact;
  long long samples = 0;
  std::uint64_t seed = 0;
  /// The measured U; compare against an epsilon. Well-hiding is asymptotic
  /// and is never decided from one instance.
  double verdict_epsilon = 0.0;
};

HidingReport MakeHidingReport(const JointDist& joint, EvaluationMode mode = EvaluationMode::kExact,
                              long long samples = 0, std::uint64_t seed = 0);

struct LemmaKnownWitness {
  Vertex u = 0;
  Vertex v = 0;
  long long t = 0;
  std::vector<Vertex> reachable_from_u;
  std::vector<Vertex> reachable_from_v;
  double disjoint_prob = 0.0;
  double gamma = 0.0;
  /// 1 - f(1/2 + gamma) when gamma > 0, else 0.
  double eta_bound = 0.0;
  double measured_mi = 0.0;
  double measured_uc = 0.0;
  EvaluationMode mode = EvaluationMode::kExact;
  long long samples = 0;
};

/// Checks whether `algo` stopped after t rounds separates u from v. Exact mode
/// takes the supports of the exact t-round laws; Monte Carlo mode takes the
/// union of sampled positions over `trials` runs from each start.
LemmaKnownWitness LemmaKnownCheck(const PortLabeledGraph& g, const AlgorithmSpec& algo, long long t,
                                  Vertex u, Vertex v, long long trials = 0, std::uint64_t seed = 0,
                                  EvaluationMode mode = EvaluationMode::kExact);

struct FloorDHalfReport {
  Vertex u = 0;
  Vertex v = 0;
  int diameter = 0;
  int threshold = 0;  // floor(D / 2)
  int agents = 1;
  /// Pr[energy >= threshold] under the two-point prior; exact for
  /// deterministic algorithms, a frequency over `trials` otherwise.
  double pr_moves_at_least = 0.0;
  long long trials = 0;
  EvaluationMode mode = EvaluationMode::kExact;
  HidingReport hiding;
};

FloorDHalfReport FloorDHalfExperiment(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                                      long long trials, std::uint64_t seed, int agents = 1);

struct ScalingRow {
  int x = 0;
  int y = 0;
  int n = 0;
  int m = 0;
  long long trials = 0;
  double mean_steps = 0.0;
  double std_steps = 0.0;
};

/// Vertices counted as "the middle" of a chain: the middle bridge's endpoints
/// when y is even, else the middle clique with its bridgeheads.
std::vector<Vertex> ChainMiddle(const ChainOfCliques& chain);

/// Rounds until the agent started at `start` first stands in the middle of the
/// chain. The randomized hider's termination is ignored here: its hitting time
/// is that of its movement kernel.
long long RoundsToMiddle(const ChainOfCliques& chain, const AlgorithmSpec& algo, Vertex start,
                         std::uint64_t seed, const RunOptions& options = {});

/// For every (x, y): `members` random chains, `trials` runs each from a
/// uniform first-clique vertex.
std::vector<ScalingRow> ChainCliquesScaling(const std::vector<int>& x_list,
                                            const std::vector<int>& y_list,
                                            const AlgorithmSpec& algo, int members, int trials,
                                            std::uint64_t seed, int jobs = 1);

std::string ScalingCsv(const std::vector<ScalingRow>& rows);
/// Least-squares slope of log(mean_steps) against log(m).
double LogLogSlope(const std::vector<ScalingRow>& rows);

struct ParityReport {
  Vertex u = 0;
  Vertex v = 0;
  long long t = 0;
  double uc_non_lazy = 0.0;
  double uc_lazy = 0.0;
};

/// Two-point prior on vertex 1 and its port-1 neighbor (opposite colors).
ParityReport BipartiteParityProbe(const PortLabeledGraph& g, long long t);

struct TrapOutcome {
  Vertex start = 0;
  bool terminated = false;
  std::optional<LoopCertificate> certificate;
};

struct TrapReport {
  int d = 0;
  int p = 0;
  int n = 0;
  DegreeRule rule;
  std::vector<TrapOutcome> outcomes;
  /// Every start produced a certificate within 2n rounds.
  bool all_looped_within_2n = false;
};

/// Runs the bridge-port memoryless agent from every vertex of double_star(d, p).
TrapReport DoubleStarTrap(int d, int p);

/// U(X0; X_t) for the algorithm stopped after t rounds, t = 0..t_max.
std::vector<double> HidingSeries(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                                 const Dist& prior, long long t_max);

}  // namespace hidekit
