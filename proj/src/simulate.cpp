#include "hidekit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "hidekit/markov.hpp"
#include "hidekit/rng.hpp"

namespace hidekit {

std::string ConfigurationKey(const Configuration& c) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, count] : c) {
    if (count == 0) continue;
    if (!first) out << ',';
    first = false;
    out << v << ':' << count;
  }
  return out.str();
}

Configuration ConfigurationOf(const std::vector<Vertex>& positions) {
  Configuration c;
  for (Vertex v : positions) ++c[v];
  return c;
}

namespace {

using Agent = std::variant<GoToMinIdAgent, DfsMinIdAgent, RandomWalkHiderAgent, DegreeRuleAgent>;

Agent MakeAgent(const PortLabeledGraph& g, const AlgorithmSpec& algo) {
  switch (algo.kind) {
    case AlgorithmKind::kGoToMinId:
      return GoToMinIdAgent(g);
    case AlgorithmKind::kDfsMinId:
      return DfsMinIdAgent();
    case AlgorithmKind::kRandomWalkHider:
      return RandomWalkHiderAgent(algo.q);
    case AlgorithmKind::kDeterministicNoMemory:
      return DegreeRuleAgent(algo.rule);
  }
  throw Error(ErrorCode::kUnsupportedAlgorithm, "unknown algorithm kind");
}

struct Decide {
  const LocalView& view;
  Engine& engine;

  AgentDecision operator()(const GoToMinIdAgent& a) const { return a.Step(view); }
  AgentDecision operator()(DfsMinIdAgent& a) const { return a.Step(view); }
  AgentDecision operator()(const RandomWalkHiderAgent& a) const {
    BranchDraw draw;
    draw.branch = Uniform01(engine);
    draw.port = Uniform01(engine);
    return a.Step({view.degree, view.n_hint}, draw);
  }
  AgentDecision operator()(const DegreeRuleAgent& a) const {
    return a.Step({view.degree, view.n_hint});
  }
};

Trace RunAgent(const PortLabeledGraph& g, const AlgorithmSpec& algo, Vertex start,
               std::uint64_t stream_seed, const RunOptions& options) {
  g.check_vertex(start);
  Agent agent = MakeAgent(g, algo);
  Engine engine(stream_seed);
  // A truncated run stops on its own, so only untruncated ones need a loop witness.
  const bool memoryless_deterministic =
      algo.kind == AlgorithmKind::kDeterministicNoMemory && !algo.truncate_after;
  std::map<Vertex, long long> first_seen;

  Trace trace;
  trace.visited.push_back(start);
  LocalView view{start, g.degree(start), std::nullopt, g.num_vertices(), 0};
  while (true) {
    if (algo.truncate_after && trace.rounds >= *algo.truncate_after) {
      trace.truncated = true;
      return trace;
    }
    if (memoryless_deterministic) {
      const auto [it, fresh] = first_seen.emplace(view.vertex, trace.rounds);
      if (!fresh) {
        throw NonTerminationError(
            "memoryless deterministic agent revisited vertex " + std::to_string(view.vertex) +
                " at round " + std::to_string(trace.rounds),
            trace.rounds, LoopCertificate{view.vertex, it->second, trace.rounds});
      }
    }
    if (trace.rounds >= options.round_cap) {
      throw NonTerminationError("round cap " + std::to_string(options.round_cap) + " reached",
                                trace.rounds, std::nullopt);
    }
    const AgentDecision decision = std::visit(Decide{view, engine}, agent);
    if (decision.action == Action::kTerminate) {
      trace.terminated = true;
      return trace;
    }
    ++trace.rounds;
    ++view.round;
    if (decision.action == Action::kMove) {
      const Vertex next = g.neighbor(view.vertex, decision.port);
      view.arrival_port = *g.port_to(next, view.vertex);
      view.vertex = next;
      view.degree = g.degree(next);
      ++trace.moves;
    } else {
      view.arrival_port.reset();
    }
    trace.visited.push_back(view.vertex);
  }
}

}  // namespace

RunResult RunMulti(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                   const std::vector<Vertex>& starts, std::uint64_t seed,
                   const RunOptions& options) {
  if (starts.empty()) throw Error(ErrorCode::kBadParameters, "at least one agent required");
  algo.Validate();
  RunResult result;
  std::vector<Vertex> finals;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    Trace trace = RunAgent(g, algo, starts[i], ChildSeed(seed, i), options);
    result.energy = std::max(result.energy, trace.moves);
    result.makespan = std::max(result.makespan, trace.rounds);
    finals.push_back(trace.final());
    result.per_agent.push_back(std::move(trace));
  }
  result.initial = ConfigurationOf(starts);
  result.final = ConfigurationOf(finals);
  return result;
}

RunResult RunSingle(const PortLabeledGraph& g, const AlgorithmSpec& algo, Vertex start,
                    std::uint64_t seed, const RunOptions& options) {
  return RunMulti(g, algo, {start}, seed, options);
}

Trace GoToMinId(const PortLabeledGraph& g, Vertex start) {
  return RunSingle(g, AlgorithmSpec::GoToMinId(), start, 0).per_agent.front();
}

Trace DfsMinId(const PortLabeledGraph& g, Vertex start) {
  return RunSingle(g, AlgorithmSpec::DfsMinId(), start, 0).per_agent.front();
}

JointDist ExactFinalKernel(const PortLabeledGraph& g, const AlgorithmSpec& algo,
                           double tail_threshold) {
  algo.Validate();
  const int n = g.num_vertices();
  if (algo.deterministic()) {
    if (algo.kind == AlgorithmKind::kDeterministicNoMemory && !algo.truncate_after) {
      throw Error(ErrorCode::kUnsupportedAlgorithm,
                  "memoryless deterministic agents have no final law unless truncated");
    }
    JointDist kernel = JointDist::Zero(n, n);
    for (Vertex x = 1; x <= n; ++x) {
      kernel(x - 1, RunSingle(g, algo, x, 0).final.begin()->first - 1) = 1.0;
    }
    return kernel;
  }

  if (!(tail_threshold > 0.0 && tail_threshold < 1.0)) {
    throw Error(ErrorCode::kBadParameters, "tail threshold must lie in (0, 1)");
  }
  const double q = algo.q;
  const TransitionMatrix K = AlgorithmWalkMatrix(g, q);
  JointDist law = JointDist::Zero(n, n);
  TransitionMatrix Kt = TransitionMatrix::Identity(n, n);
  double survive = 1.0;  // (1 - q)^t
  for (long long t = 0;; ++t) {
    if (algo.truncate_after && t == *algo.truncate_after) {
      law += survive * Kt;
      return law;
    }
    if (!algo.truncate_after && survive < tail_threshold) {
      return law / (1.0 - survive);
    }
    law += (q * survive) * Kt;
    survive *= 1.0 - q;
    Kt = Kt * K;
  }
}

Dist ExactFinalLaw(const PortLabeledGraph& g, const AlgorithmSpec& algo, Vertex start,
                   double tail_threshold) {
  g.check_vertex(start);
  if (algo.deterministic()) {
    algo.Validate();
    if (algo.kind == AlgorithmKind::kDeterministicNoMemory && !algo.truncate_after) {
      throw Error(ErrorCode::kUnsupportedAlgorithm,
                  "memoryless deterministic agents have no final law unless truncated");
    }
    Dist law = Dist::Zero(g.num_vertices());
    law(RunSingle(g, algo, start, 0).final.begin()->first - 1) = 1.0;
    return law;
  }
  return ExactFinalKernel(g, algo, tail_threshold).row(start - 1).transpose();
}

}  // namespace hidekit
