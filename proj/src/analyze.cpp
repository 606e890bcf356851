#include "hidekit/analyze.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "hidekit/markov.hpp"
#include "hidekit/parallel.hpp"
#include "hidekit/rng.hpp"

namespace hidekit {

Dist UniformPrior(const PortLabeledGraph& g) {
  return Dist::Constant(g.num_vertices(), 1.0 / g.num_vertices());
}

Dist TwoPointPrior(const PortLabeledGraph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw Error(ErrorCode::kBadVertices, "two-point prior needs distinct vertices");
  Dist prior = Dist::Zero(g.num_vertices());
  prior(u - 1) = 0.5;
  prior(v - 1) = 0.5;
  return prior;
}

StartPrior AllAgentsAt(const Dist& prior, int agents) {
  if (agents < 1) throw Error(ErrorCode::kBadParameters, "at least one agent required");
  ValidateDistribution(prior);
  StartPrior out;
  for (Eigen::Index i = 0; i < prior.size(); ++i) {
    if (prior(i) <= 0.0) continue;
    out.placements.emplace_back(agents, static_cast<Vertex>(i + 1));
    out.probs.push_back(prior(i));
  }
  return out;
}

JointDist ExactJoint(const PortLabeledGraph& g, const AlgorithmSpec& algo, const Dist& prior,
                     double tail_threshold) {
  if (prior.size() != g.num_vertices()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior size differs from vertex count");
  }
  ValidateDistribution(prior);
  return JointFromKernel(prior, ExactFinalKernel(g, algo, tail_threshold));
}

LabeledJoint McJoint(const PortLabeledGraph& g, const AlgorithmSpec& algo, const StartPrior& prior,
                     long long samples, std::uint64_t seed, int jobs) {
  if (samples < 1) throw Error(ErrorCode::kBadParameters, "samples must be positive");
  if (prior.placements.empty() || prior.placements.size() != prior.probs.size()) {
    throw Error(ErrorCode::kInvalidDistribution, "malformed start prior");
  }
  ValidateDistribution(
      Eigen::Map<const Dist>(prior.probs.data(), static_cast<Eigen::Index>(prior.probs.size())));

  std::map<std::string, int> rows;
  for (const auto& placement : prior.placements) {
    rows.emplace(ConfigurationKey(ConfigurationOf(placement)), 0);
  }
  std::vector<std::pair<std::string, std::string>> outcomes(static_cast<std::size_t>(samples));
  ParallelFor(outcomes.size(), jobs, [&](std::size_t i) {
    const std::uint64_t sample_seed = ChildSeed(seed, i);
    Engine engine(sample_seed);
    const double draw = Uniform01(engine);
    std::size_t pick = 0;
    double cumulative = prior.probs[0];
    while (draw >= cumulative && pick + 1 < prior.probs.size()) cumulative += prior.probs[++pick];
    const RunResult run = RunMulti(g, algo, prior.placements[pick], Mix64(sample_seed));
    outcomes[i] = {ConfigurationKey(run.initial), ConfigurationKey(run.final)};
  });
  std::map<std::pair<std::string, std::string>, long long> counts;
  std::map<std::string, int> cols;
  for (const auto& outcome : outcomes) {
    cols.emplace(outcome.second, 0);
    ++counts[outcome];
  }

  LabeledJoint out;
  int index = 0;
  for (auto& [key, i] : rows) {
    i = index++;
    out.row_labels.push_back(key);
  }
  index = 0;
  for (auto& [key, j] : cols) {
    j = index++;
    out.col_labels.push_back(key);
  }
  out.probs = JointDist::Zero(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(cols.size()));
  for (const auto& [cell, count] : counts) {
    out.probs(rows.at(cell.first), cols.at(cell.second)) =
        static_cast<double>(count) / static_cast<double>(samples);
  }
  return out;
}

std::string_view EvaluationModeName(EvaluationMode mode) {
  return mode == EvaluationMode::kExact ? "exact" : "monte_carlo";
}

HidingReport MakeHidingReport(const JointDist& joint, EvaluationMode mode, long long samples,
                              std::uint64_t seed) {
  HidingReport report;
  report.h_x0 = Entropy(RowMarginal(joint));
  report.mi = MutualInformation(joint);
  report.uc = UncertaintyCoefficient(joint);
  report.mode = mode;
  report.samples = samples;
  report.seed = seed;
  report.verdict_epsilon = report.uc;
  return report;
}

namespace {

std::vector<Vertex> Support(const Dist& law) {
  std::vector<Vertex> out;
  for (Eigen::Index i = 0; i < law.size(); ++i) {
    if (law(i) > 0.0) out.push_back(static_cast<Vertex>(i + 1));
  }
  return out;
}

bool Disjoint(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.empty();
}

}  // namespace

LemmaKnownWitness LemmaKnownCheck(const PortLabeledGraph& g, const AlgorithmSpec& algo, long long t,
                                  Vertex u, Vertex v, long long trials, std::uint64_t seed,
                                  EvaluationMode mode) {
  if (!g.contains(u) || !g.contains(v) || u == v) {
    throw Error(ErrorCode::kBadVertices, "lemma check needs two distinct valid vertices");
  }
  if (t < 0) throw Error(ErrorCode::kBadParameters, "t must be non-negative");
  const AlgorithmSpec stopped = algo.Truncated(t);
  const Dist prior = TwoPointPrior(g, u, v);

  LemmaKnownWitness w;
  w.u = u;
  w.v = v;
  w.t = t;
  w.mode = mode;
  JointDist joint;
  if (mode == EvaluationMode::kExact) {
    const JointDist kernel = ExactFinalKernel(g, stopped);
    w.reachable_from_u = Support(kernel.row(u - 1).transpose());
    w.reachable_from_v = Support(kernel.row(v - 1).transpose());
    joint = JointFromKernel(prior, kernel);
  } else {
    if (trials < 1) throw Error(ErrorCode::kBadParameters, "Monte Carlo mode needs trials");
    std::set<Vertex> from_u;
    std::set<Vertex> from_v;
    JointDist counts = JointDist::Zero(g.num_vertices(), g.num_vertices());
    for (long long i = 0; i < trials; ++i) {
      const Vertex a = RunSingle(g, stopped, u, ChildSeed(seed, 2 * i)).per_agent[0].final();
      const Vertex b = RunSingle(g, stopped, v, ChildSeed(seed, 2 * i + 1)).per_agent[0].final();
      from_u.insert(a);
      from_v.insert(b);
      counts(u - 1, a - 1) += 1.0;
      counts(v - 1, b - 1) += 1.0;
    }
    w.reachable_from_u.assign(from_u.begin(), from_u.end());
    w.reachable_from_v.assign(from_v.begin(), from_v.end());
    w.samples = trials;
    joint = counts / static_cast<double>(2 * trials);
  }
  w.disjoint_prob = Disjoint(w.reachable_from_u, w.reachable_from_v) ? 1.0 : 0.0;
  w.gamma = w.disjoint_prob - 0.5;
  w.eta_bound = w.gamma > 0.0 ? 1.0 - BinaryEntropy(0.5 + w.gamma) : 0.0;
  w.measured_mi = MutualInformation(joint);
  w.measured_uc = UncertaintyCoefficient(joint);
  return w;
}

std::vector<double> HidingSeries(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                                 const Dist& prior, long long t_max) {
  if (t_max < 0) throw Error(ErrorCode::kBadParameters, "t_max must be non-negative");
  if (prior.size() != g.num_vertices()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior size differs from vertex count");
  }
  algo.Validate();
  const int n = g.num_vertices();
  std::vector<double> series;
  if (algo.deterministic()) {
    std::vector<Trace> traces;
    const AlgorithmSpec capped =
        algo.Truncated(std::min(t_max, algo.truncate_after.value_or(t_max)));
    for (Vertex x = 1; x <= n; ++x) traces.push_back(RunSingle(g, capped, x, 0).per_agent[0]);
    for (long long t = 0; t <= t_max; ++t) {
      JointDist kernel = JointDist::Zero(n, n);
      for (Vertex x = 1; x <= n; ++x) {
        const auto& visited = traces[x - 1].visited;
        const auto at = std::min<std::size_t>(static_cast<std::size_t>(t), visited.size() - 1);
        kernel(x - 1, visited[at] - 1) = 1.0;
      }
      series.push_back(UncertaintyCoefficient(JointFromKernel(prior, kernel)));
    }
    return series;
  }
  const double q = algo.q;
  const TransitionMatrix K = AlgorithmWalkMatrix(g, q);
  TransitionMatrix partial = TransitionMatrix::Zero(n, n);
  TransitionMatrix Kt = TransitionMatrix::Identity(n, n);
  double survive = 1.0;
  for (long long t = 0; t <= t_max; ++t) {
    series.push_back(UncertaintyCoefficient(JointFromKernel(prior, partial + survive * Kt)));
    partial += (q * survive) * Kt;
    survive *= 1.0 - q;
    Kt = Kt * K;
  }
  return series;
}

}  // namespace hidekit
