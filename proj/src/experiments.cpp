#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hidekit/analyze.hpp"
#include "hidekit/markov.hpp"
#include "hidekit/parallel.hpp"
#include "hidekit/rng.hpp"

namespace hidekit {

namespace {

HidingReport DeterministicMultiAgentHiding(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                                           Vertex u, Vertex v, int agents) {
  const auto final_key = [&](Vertex s) {
    return ConfigurationKey(RunMulti(g, algo, std::vector<Vertex>(agents, s), 0).final);
  };
  const std::string from_u = final_key(u);
  const std::string from_v = final_key(v);
  JointDist joint;
  if (from_u == from_v) {
    joint = JointDist::Constant(2, 1, 0.5);
  } else {
    joint = JointDist::Zero(2, 2);
    joint(0, 0) = 0.5;
    joint(1, 1) = 0.5;
  }
  return MakeHidingReport(joint);
}

}  // namespace

FloorDHalfReport FloorDHalfExperiment(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                                      long long trials, std::uint64_t seed, int agents) {
  if (agents < 1) throw Error(ErrorCode::kBadParameters, "at least one agent required");
  algo.Validate();
  FloorDHalfReport report;
  std::tie(report.u, report.v) = DiameterPair(g);
  report.diameter = Diameter(g);
  report.threshold = report.diameter / 2;
  report.agents = agents;
  if (report.u == report.v) {
    throw Error(ErrorCode::kBadVertices, "graph has a single vertex");
  }
  const Dist prior = TwoPointPrior(g, report.u, report.v);

  if (algo.deterministic()) {
    report.mode = EvaluationMode::kExact;
    int hits = 0;
    for (const Vertex s : {report.u, report.v}) {
      const RunResult run = RunMulti(g, algo, std::vector<Vertex>(agents, s), 0);
      if (run.energy >= report.threshold) ++hits;
    }
    report.pr_moves_at_least = hits / 2.0;
    report.hiding = agents == 1
                        ? MakeHidingReport(ExactJoint(g, algo, prior))
                        : DeterministicMultiAgentHiding(g, algo, report.u, report.v, agents);
    return report;
  }

  if (trials < 1) throw Error(ErrorCode::kBadParameters, "randomized algorithms need trials");
  report.mode = EvaluationMode::kMonteCarlo;
  report.trials = trials;
  long long hits = 0;
  for (long long i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = ChildSeed(seed, static_cast<std::uint64_t>(i));
    Engine engine(trial_seed);
    const Vertex s = Uniform01(engine) < 0.5 ? report.u : report.v;
    const RunResult run = RunMulti(g, algo, std::vector<Vertex>(agents, s), Mix64(trial_seed));
    if (run.energy >= report.threshold) ++hits;
  }
  report.pr_moves_at_least = static_cast<double>(hits) / static_cast<double>(trials);
  if (agents == 1) {
    report.hiding = MakeHidingReport(ExactJoint(g, algo, prior));
  } else {
    const LabeledJoint joint = McJoint(g, algo, AllAgentsAt(prior, agents), trials, seed);
    report.hiding = MakeHidingReport(joint.probs, EvaluationMode::kMonteCarlo, trials, seed);
  }
  return report;
}

std::vector<Vertex> ChainMiddle(const ChainOfCliques& chain) {
  const int y = static_cast<int>(chain.cliques.size());
  std::vector<Vertex> middle;
  if (y % 2 == 0) {
    const auto [left, right] = chain.bridges[y / 2 - 1];
    middle = {left, right};
  } else {
    const int c = y / 2;
    middle = chain.cliques[c];
    // Bridgeheads subdividing edges of the middle clique belong to it.
    if (c > 0) middle.push_back(chain.bridges[c - 1].second);
    if (c + 1 < y) middle.push_back(chain.bridges[c].first);
  }
  std::sort(middle.begin(), middle.end());
  return middle;
}

long long RoundsToMiddle(const ChainOfCliques& chain, const AlgorithmSpec& algo, Vertex start,
                         std::uint64_t seed, const RunOptions& options) {
  const PortLabeledGraph& g = chain.graph;
  g.check_vertex(start);
  std::vector<bool> in_middle(g.num_vertices() + 1, false);
  for (Vertex v : ChainMiddle(chain)) in_middle[v] = true;
  if (in_middle[start]) return 0;

  if (algo.kind == AlgorithmKind::kRandomWalkHider) {
    algo.Validate();
    const double stay = 0.5 / (1.0 - algo.q);
    Engine engine(seed);
    Vertex at = start;
    for (long long round = 1; round <= options.round_cap; ++round) {
      const double branch = Uniform01(engine);
      const double port_draw = Uniform01(engine);
      if (branch >= stay) {
        const int deg = g.degree(at);
        at = g.neighbor(at, std::min(deg, static_cast<int>(port_draw * deg) + 1));
      }
      if (in_middle[at]) return round;
    }
    throw NonTerminationError("middle not reached within the round cap", options.round_cap,
                              std::nullopt);
  }
  if (algo.kind != AlgorithmKind::kDfsMinId) {
    throw Error(ErrorCode::kUnsupportedAlgorithm,
                "chain scaling supports the DFS and random-walk hiders");
  }
  const Trace trace = RunSingle(g, algo, start, seed, options).per_agent[0];
  for (std::size_t r = 0; r < trace.visited.size(); ++r) {
    if (in_middle[trace.visited[r]]) return static_cast<long long>(r);
  }
  throw Error(ErrorCode::kUnsupportedAlgorithm, "run ended without reaching the middle");
}

std::vector<ScalingRow> ChainCliquesScaling(const std::vector<int>& x_list,
                                            const std::vector<int>& y_list,
                                            const AlgorithmSpec& algo, int members, int trials,
                                            std::uint64_t seed, int jobs) {
  if (members < 1 || trials < 1) {
    throw Error(ErrorCode::kBadParameters, "members and trials must be positive");
  }
  std::vector<ScalingRow> rows;
  for (const int x : x_list) {
    for (const int y : y_list) {
      const std::uint64_t cell_seed =
          ChildSeed(seed, (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y));
      ScalingRow row;
      row.x = x;
      row.y = y;
      std::vector<ChainOfCliques> chains;
      for (int member = 0; member < members; ++member) {
        chains.push_back(GenerateChainOfCliques(x, y, ChildSeed(cell_seed, member)));
      }
      row.n = chains.front().graph.num_vertices();
      row.m = chains.front().graph.num_edges();
      std::vector<double> samples(static_cast<std::size_t>(members) * trials);
      ParallelFor(samples.size(), jobs, [&](std::size_t i) {
        const int member = static_cast<int>(i / trials);
        const int trial = static_cast<int>(i % trials);
        const ChainOfCliques& chain = chains[member];
        const std::uint64_t trial_seed = ChildSeed(ChildSeed(cell_seed, member), trial);
        Engine engine(trial_seed);
        const auto& first = chain.cliques.front();
        const Vertex start = first[UniformIndex(engine, static_cast<int>(first.size()))];
        samples[i] = static_cast<double>(RoundsToMiddle(chain, algo, start, Mix64(trial_seed)));
      });
      row.trials = static_cast<long long>(samples.size());
      const double mean = SortedSum(samples) / static_cast<double>(samples.size());
      std::vector<double> squares;
      for (double s : samples) squares.push_back((s - mean) * (s - mean));
      row.mean_steps = mean;
      row.std_steps = samples.size() > 1
                          ? std::sqrt(SortedSum(squares) / static_cast<double>(samples.size() - 1))
                          : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string ScalingCsv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "x,y,n,m,trials,mean_steps,std_steps\n";
  for (const ScalingRow& r : rows) {
    out << r.x << ',' << r.y << ',' << r.n << ',' << r.m << ',' << r.trials << ',' << r.mean_steps
        << ',' << r.std_steps << '\n';
  }
  return out.str();
}

double LogLogSlope(const std::vector<ScalingRow>& rows) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const ScalingRow& r : rows) {
    if (r.mean_steps <= 0.0 || r.m <= 0) continue;
    xs.push_back(std::log(static_cast<double>(r.m)));
    ys.push_back(std::log(r.mean_steps));
  }
  if (xs.size() < 2) throw Error(ErrorCode::kBadParameters, "slope needs two positive rows");
  const auto count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorCode::kBadParameters, "all rows share one edge count");
  return sxy / sxx;
}

ParityReport BipartiteParityProbe(const PortLabeledGraph& g, long long t) {
  if (!Bipartition(g)) throw Error(ErrorCode::kNotBipartite, "graph has an odd cycle");
  if (t < 0) throw Error(ErrorCode::kBadParameters, "t must be non-negative");
  ParityReport report;
  report.u = 1;
  report.v = g.neighbor(1, 1);
  report.t = t;
  const Dist prior = TwoPointPrior(g, report.u, report.v);
  report.uc_non_lazy =
      UncertaintyCoefficient(JointFromKernel(prior, MatrixPower(SimpleWalkMatrix(g), t)));
  report.uc_lazy =
      UncertaintyCoefficient(JointFromKernel(prior, MatrixPower(LazyWalkMatrix(g), t)));
  return report;
}

TrapReport DoubleStarTrap(int d, int p) {
  const PortLabeledGraph g = MakeDoubleStar(d, p);
  TrapReport report;
  report.d = d;
  report.p = p;
  report.n = g.num_vertices();
  report.rule = {{1, 1}, {d + 1, p}};
  const AlgorithmSpec algo = AlgorithmSpec::DeterministicNoMemory(report.rule);
  report.all_looped_within_2n = true;
  for (Vertex s = 1; s <= g.num_vertices(); ++s) {
    TrapOutcome outcome;
    outcome.start = s;
    try {
      const RunResult run = RunSingle(g, algo, s, 0);
      outcome.terminated = run.per_agent[0].terminated;
    } catch (const NonTerminationError& e) {
      outcome.certificate = e.certificate();
    }
    if (outcome.terminated || !outcome.certificate ||
        outcome.certificate->repeat_round > 2LL * report.n) {
      report.all_looped_within_2n = false;
    }
    report.outcomes.push_back(outcome);
  }
  return report;
}

}  // namespace hidekit
