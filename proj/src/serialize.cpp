#include "hidekit/serialize.hpp"

#include <string>

namespace hidekit {

namespace {

[[noreturn]] void Reject(const std::string& message) {
  throw Error(ErrorCode::kBadConfig, message);
}

Json VertexList(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v);
  return out;
}

}  // namespace

Json ToJson(const AlgorithmSpec& algo) {
  Json j;
  j["kind"] = std::string(AlgorithmKindName(algo.kind));
  if (algo.kind == AlgorithmKind::kRandomWalkHider) j["q"] = algo.q;
  if (algo.kind == AlgorithmKind::kDeterministicNoMemory) {
    Json rule = Json::object();
    for (const auto& [degree, port] : algo.rule) rule[std::to_string(degree)] = port;
    j["rule"] = rule;
  }
  if (algo.truncate_after) j["truncate_after"] = *algo.truncate_after;
  return j;
}

AlgorithmSpec AlgorithmSpecFromJson(const Json& j) {
  if (!j.is_object()) Reject("algorithm must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "q" && key != "rule" && key != "truncate_after") {
      Reject("algorithm: unknown key '" + key + "'");
    }
  }
  if (!j.contains("kind") || !j["kind"].is_string()) Reject("algorithm: 'kind' required");
  AlgorithmSpec algo;
  algo.kind = ParseAlgorithmKind(j["kind"].get<std::string>());
  if (j.contains("q")) {
    if (algo.kind != AlgorithmKind::kRandomWalkHider) Reject("algorithm: 'q' not applicable");
    if (!j["q"].is_number()) Reject("algorithm: 'q' must be a number");
    algo.q = j["q"].get<double>();
  } else if (algo.kind == AlgorithmKind::kRandomWalkHider) {
    Reject("algorithm: 'q' required for random_walk_hider");
  }
  if (j.contains("rule")) {
    if (algo.kind != AlgorithmKind::kDeterministicNoMemory) {
      Reject("algorithm: 'rule' not applicable");
    }
    if (!j["rule"].is_object()) Reject("algorithm: 'rule' must be an object");
    for (const auto& [degree, port] : j["rule"].items()) {
      std::size_t used = 0;
      int d = 0;
      try {
        d = std::stoi(degree, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != degree.size()) Reject("algorithm: bad rule degree '" + degree + "'");
      if (!port.is_number_integer()) Reject("algorithm: rule ports must be integers");
      algo.rule[d] = port.get<int>();
    }
  } else if (algo.kind == AlgorithmKind::kDeterministicNoMemory) {
    Reject("algorithm: 'rule' required for deterministic_no_memory");
  }
  if (j.contains("truncate_after")) {
    if (!j["truncate_after"].is_number_integer()) {
      Reject("algorithm: 'truncate_after' must be an integer");
    }
    algo.truncate_after = j["truncate_after"].get<long long>();
  }
  algo.Validate();
  return algo;
}

Json ToJson(const Trace& trace) {
  Json j;
  j["visited"] = VertexList(trace.visited);
  j["moves"] = trace.moves;
  j["rounds"] = trace.rounds;
  j["terminated"] = trace.terminated;
  j["truncated"] = trace.truncated;
  return j;
}

Json ToJson(const Configuration& c) {
  Json j = Json::object();
  for (const auto& [v, count] : c) {
    if (count > 0) j[std::to_string(v)] = count;
  }
  return j;
}

Json ToJson(const RunResult& run) {
  Json j;
  j["initial"] = ToJson(run.initial);
  j["final"] = ToJson(run.final);
  j["energy"] = run.energy;
  j["makespan"] = run.makespan;
  Json agents = Json::array();
  for (const Trace& t : run.per_agent) agents.push_back(ToJson(t));
  j["per_agent"] = agents;
  return j;
}

Json ToJson(const LoopCertificate& certificate) {
  Json j;
  j["vertex"] = certificate.vertex;
  j["first_round"] = certificate.first_round;
  j["repeat_round"] = certificate.repeat_round;
  return j;
}

Json DistToJson(const Dist& d) {
  Json j = Json::object();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) > 0.0) j[std::to_string(i + 1)] = d(i);
  }
  return j;
}

Json ToJson(const HidingReport& report) {
  Json j;
  j["h_x0"] = report.h_x0;
  j["mi"] = report.mi;
  j["uc"] = report.uc;
  j["mode"] = std::string(EvaluationModeName(report.mode));
  if (report.mode == EvaluationMode::kMonteCarlo) {
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["estimator"] = "plug-in (biased upward at small sample counts)";
  }
  j["verdict_epsilon"] = report.verdict_epsilon;
  return j;
}

Json ToJson(const LemmaKnownWitness& w) {
  Json j;
  j["u"] = w.u;
  j["v"] = w.v;
  j["t"] = w.t;
  j["mode"] = std::string(EvaluationModeName(w.mode));
  if (w.mode == EvaluationMode::kMonteCarlo) j["samples"] = w.samples;
  j["reachable_from_u"] = VertexList(w.reachable_from_u);
  j["reachable_from_v"] = VertexList(w.reachable_from_v);
  j["disjoint_prob"] = w.disjoint_prob;
  j["gamma"] = w.gamma;
  j["eta_bound"] = w.eta_bound;
  j["measured_mi"] = w.measured_mi;
  j["measured_uc"] = w.measured_uc;
  return j;
}

Json ToJson(const FloorDHalfReport& r) {
  Json j;
  j["u"] = r.u;
  j["v"] = r.v;
  j["diameter"] = r.diameter;
  j["threshold"] = r.threshold;
  j["agents"] = r.agents;
  j["mode"] = std::string(EvaluationModeName(r.mode));
  if (r.mode == EvaluationMode::kMonteCarlo) j["trials"] = r.trials;
  j["pr_moves_at_least_threshold"] = r.pr_moves_at_least;
  j["hiding"] = ToJson(r.hiding);
  return j;
}

Json ToJson(const ParityReport& r) {
  Json j;
  j["u"] = r.u;
  j["v"] = r.v;
  j["t"] = r.t;
  j["uc_non_lazy"] = r.uc_non_lazy;
  j["uc_lazy"] = r.uc_lazy;
  return j;
}

Json ToJson(const TrapReport& r) {
  Json j;
  j["d"] = r.d;
  j["p"] = r.p;
  j["n"] = r.n;
  Json rule = Json::object();
  for (const auto& [degree, port] : r.rule) rule[std::to_string(degree)] = port;
  j["rule"] = rule;
  Json outcomes = Json::array();
  for (const TrapOutcome& o : r.outcomes) {
    Json item;
    item["start"] = o.start;
    item["terminated"] = o.terminated;
    item["certificate"] = o.certificate ? ToJson(*o.certificate) : Json(nullptr);
    outcomes.push_back(item);
  }
  j["outcomes"] = outcomes;
  j["all_looped_within_2n"] = r.all_looped_within_2n;
  return j;
}

}  // namespace hidekit
