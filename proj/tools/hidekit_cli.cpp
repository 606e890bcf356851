// hidekit command-line front end.

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hidekit/algorithms.hpp"
#include "hidekit/analyze.hpp"
#include "hidekit/graph.hpp"
#include "hidekit/markov.hpp"
#include "hidekit/parallel.hpp"
#include "hidekit/rng.hpp"
#include "hidekit/serialize.hpp"
#include "hidekit/simulate.hpp"

namespace {

using namespace hidekit;

constexpr int kExitValidation = 2;
constexpr int kExitNonTermination = 3;

[[noreturn]] void Invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::kBadConfig, field + ": " + message);
}

struct GraphOptions {
  std::string graph;
  std::string family;
  int n = 0;
  int a = 0;
  int b = 0;
  int d = 0;
  int p = 0;
  int x = 0;
  int y = 0;
  std::uint64_t graph_seed = 0;
};

struct AlgoOptions {
  std::string algo;
  std::optional<double> q;
  std::string rule;
  std::optional<long long> truncate_after;
};

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out;
  std::string plot;
  std::string config;
};

void AddFamilyParameters(CLI::App* sub, GraphOptions& o) {
  sub->add_option("--n", o.n, "vertex count (path, cycle, clique)");
  sub->add_option("--a", o.a, "left side (complete-bipartite)");
  sub->add_option("--b", o.b, "right side (complete-bipartite)");
  sub->add_option("--d", o.d, "star degree (double-star)");
  sub->add_option("--p", o.p, "bridge port (double-star)");
  sub->add_option("--x", o.x, "clique size (chain-of-cliques)");
  sub->add_option("--y", o.y, "clique count (chain-of-cliques)");
}

void AddGraphOptions(CLI::App* sub, GraphOptions& o) {
  sub->add_option("--graph", o.graph, "graph JSON file");
  sub->add_option("--family", o.family,
                  "generate inline: path, cycle, clique, complete-bipartite, double-star, "
                  "chain-of-cliques");
  AddFamilyParameters(sub, o);
  sub->add_option("--graph-seed", o.graph_seed, "seed of a randomized family member");
}

void AddAlgoOptions(CLI::App* sub, AlgoOptions& o, const std::string& default_algo = "") {
  o.algo = default_algo;
  sub->add_option("--algo", o.algo, "go-to-min-id, dfs, rw-hider, det-no-memory");
  sub->add_option("--q", o.q, "termination probability of rw-hider (default 1/(n^3 log2 n))");
  sub->add_option("--rule", o.rule, "det-no-memory rule as degree:port pairs, e.g. 1:1,4:2");
  sub->add_option("--truncate-after", o.truncate_after, "stop every agent after this many rounds");
}

void AddSeed(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--seed", o.seed, "master seed (default: $HIDEKIT_SEED, else 0)");
}

void AddOutput(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--config", o.config, "JSON file of option values; command-line flags win");
}

void AddJobs(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--jobs", o.jobs, "worker threads for independent trials")
      ->check(CLI::PositiveNumber);
}

void AddPlot(CLI::App* sub, CommonOptions& o, const std::string& what) {
  sub->add_option("--emit-plot-data", o.plot, "write " + what + " as CSV to this file");
}

std::string Scalar(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  Invalid(field, "expected a scalar value");
}

// Flattens nested config sections into option-name -> values.
std::vector<std::pair<std::string, std::vector<std::string>>> ConfigItems(const Json& root) {
  std::vector<std::pair<std::string, std::vector<std::string>>> items;
  for (const auto& [key, value] : root.items()) {
    if (key == "graph" && value.is_object()) {
      for (const auto& [k, v] : value.items()) {
        static const std::vector<std::string> allowed = {"family", "n", "a", "b",   "d",
                                                         "p",      "x", "y", "seed"};
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
          Invalid("graph." + k, "unknown config key");
        }
        items.push_back({k == "seed" ? "graph_seed" : k, {Scalar(v, "graph." + k)}});
      }
    } else if (key == "algorithm" && value.is_object()) {
      for (const auto& [k, v] : value.items()) {
        if (k == "kind") {
          items.push_back({"algo", {Scalar(v, "algorithm.kind")}});
        } else if (k == "q" || k == "truncate_after") {
          items.push_back({k, {Scalar(v, "algorithm." + k)}});
        } else if (k == "rule" && v.is_object()) {
          std::string rule;
          for (const auto& [degree, port] : v.items()) {
            rule += (rule.empty() ? "" : ",") + degree + ":" + Scalar(port, "algorithm.rule");
          }
          items.push_back({"rule", {rule}});
        } else if (k == "rule") {
          items.push_back({"rule", {Scalar(v, "algorithm.rule")}});
        } else {
          Invalid("algorithm." + k, "unknown config key");
        }
      }
    } else if ((key == "rule" || key == "prior") && value.is_object()) {
      std::string text;
      const char sep = key == "rule" ? ':' : '=';
      for (const auto& [k, v] : value.items()) {
        text += (text.empty() ? "" : ",") + k + sep + Scalar(v, key + "." + k);
      }
      items.push_back({key, {text}});
    } else if (value.is_array()) {
      std::vector<std::string> values;
      for (const auto& v : value) values.push_back(Scalar(v, key));
      items.push_back({key, values});
    } else {
      items.push_back({key, {Scalar(value, key)}});
    }
  }
  return items;
}

void ApplyConfig(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) Invalid("config", "cannot read '" + path + "'");
  Json root;
  try {
    root = Json::parse(in);
  } catch (const Json::parse_error& e) {
    Invalid("config", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) Invalid("config", "top level must be an object");
  for (auto& [name, values] : ConfigItems(root)) {
    std::string flag = name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = flag == "config" ? nullptr : sub->get_option_no_throw("--" + flag);
    if (opt == nullptr) Invalid(name, "unknown config key");
    if (opt->count() > 0) continue;
    try {
      for (const auto& v : values) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      Invalid(name, e.what());
    }
  }
}

std::uint64_t ResolveSeed(const CommonOptions& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv("HIDEKIT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, seed);
  if (ec != std::errc() || ptr != end) Invalid("HIDEKIT_SEED", "not an unsigned integer");
  return seed;
}

GraphFamilySpec FamilySpec(const GraphOptions& o, std::uint64_t seed) {
  GraphFamilySpec spec;
  spec.family = ParseGraphFamily(o.family);
  spec.n = o.n;
  spec.a = o.a;
  spec.b = o.b;
  spec.d = o.d;
  spec.p = o.p;
  spec.x = o.x;
  spec.y = o.y;
  spec.seed = seed;
  return spec;
}

PortLabeledGraph ResolveGraph(const GraphOptions& o) {
  if (!o.graph.empty() && !o.family.empty()) Invalid("graph", "give either --graph or --family");
  if (!o.graph.empty()) return LoadGraph(o.graph);
  if (!o.family.empty()) return GenerateFamily(FamilySpec(o, o.graph_seed));
  Invalid("graph", "required (--graph FILE or --family NAME)");
}

std::vector<int> ParseIntList(const std::string& text, const std::string& field) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      Invalid(field, "bad integer '" + token + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) Invalid(field, "empty list");
  return out;
}

DegreeRule ParseRule(const std::string& text) {
  DegreeRule rule;
  std::stringstream in(text);
  std::string pair;
  while (std::getline(in, pair, ',')) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos) Invalid("rule", "expected degree:port, got '" + pair + "'");
    const auto degree = ParseIntList(pair.substr(0, colon), "rule");
    const auto port = ParseIntList(pair.substr(colon + 1), "rule");
    if (degree.size() != 1 || port.size() != 1) Invalid("rule", "bad pair '" + pair + "'");
    rule[degree[0]] = port[0];
  }
  return rule;
}

AlgorithmSpec ResolveAlgo(const AlgoOptions& o, int n) {
  if (o.algo.empty()) Invalid("algo", "required");
  AlgorithmSpec algo;
  algo.kind = ParseAlgorithmKind(o.algo);
  if (algo.kind == AlgorithmKind::kRandomWalkHider) {
    algo.q = o.q ? *o.q : SuggestedTerminationProbability(n);
  } else if (o.q) {
    Invalid("q", "only applies to rw-hider");
  }
  if (algo.kind == AlgorithmKind::kDeterministicNoMemory) {
    if (o.rule.empty()) Invalid("rule", "required for det-no-memory");
    algo.rule = ParseRule(o.rule);
  } else if (!o.rule.empty()) {
    Invalid("rule", "only applies to det-no-memory");
  }
  algo.truncate_after = o.truncate_after;
  algo.Validate();
  return algo;
}

Dist ResolvePrior(const PortLabeledGraph& g, const std::string& text) {
  if (text == "uniform") return UniformPrior(g);
  const std::string two_point = "two_point:";
  if (text.rfind(two_point, 0) == 0 || text.rfind("two-point:", 0) == 0) {
    const std::string rest = text.substr(two_point.size());
    if (rest == "diameter") {
      const auto [u, v] = DiameterPair(g);
      return TwoPointPrior(g, u, v);
    }
    const auto uv = ParseIntList(rest, "prior");
    if (uv.size() != 2) Invalid("prior", "two_point needs exactly two vertices");
    return TwoPointPrior(g, uv[0], uv[1]);
  }
  Dist prior = Dist::Zero(g.num_vertices());
  std::stringstream in(text);
  std::string pair;
  while (std::getline(in, pair, ',')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      Invalid("prior", "expected uniform, two_point:u,v, two_point:diameter or v=prob pairs");
    }
    const auto v = ParseIntList(pair.substr(0, eq), "prior");
    if (v.size() != 1 || !g.contains(v[0])) Invalid("prior", "bad vertex in '" + pair + "'");
    try {
      prior(v[0] - 1) = std::stod(pair.substr(eq + 1));
    } catch (const std::exception&) {
      Invalid("prior", "bad probability in '" + pair + "'");
    }
  }
  ValidateDistribution(prior);
  return prior;
}

EvaluationMode ResolveMode(const std::string& text) {
  if (text == "exact") return EvaluationMode::kExact;
  if (text == "mc" || text == "monte_carlo") return EvaluationMode::kMonteCarlo;
  Invalid("mode", "expected exact or mc");
}

void WriteText(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) Invalid("out", "cannot write '" + path + "'");
  out << text;
}

void Emit(const Json& j, const std::string& path) { WriteText(j.dump(2) + "\n", path); }

std::string CsvNumber(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

Json GraphSummary(const PortLabeledGraph& g) {
  Json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["diameter"] = Diameter(g);
  return j;
}

struct GenerateCommand {
  GraphOptions graph;
  CommonOptions common;

  void Register(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("generate", "generate a port-labeled graph family member");
    sub->add_option("--family", graph.family,
                    "path, cycle, clique, complete-bipartite, double-star, chain-of-cliques");
    AddFamilyParameters(sub, graph);
    AddSeed(sub, common);
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    if (graph.family.empty()) Invalid("family", "required");
    const PortLabeledGraph g = GenerateFamily(FamilySpec(graph, ResolveSeed(common)));
    Json summary;
    summary["family"] = std::string(GraphFamilyName(ParseGraphFamily(graph.family)));
    summary.update(GraphSummary(g));
    if (common.out.empty()) {
      std::cout << GraphToJson(g);
      std::cerr << summary.dump() << "\n";
    } else {
      SaveGraph(g, common.out);
      summary["out"] = common.out;
      std::cout << summary.dump(2) << "\n";
    }
    return 0;
  }

  CLI::App* self = nullptr;
};

Json NonTerminationPayload(const NonTerminationError& e) {
  Json j;
  j["error"] = "NonTermination";
  j["message"] = e.what();
  j["rounds"] = e.rounds();
  j["certificate"] = e.certificate() ? ToJson(*e.certificate()) : Json(nullptr);
  return j;
}

struct SimulateCommand {
  GraphOptions graph;
  AlgoOptions algo;
  CommonOptions common;
  std::string start;
  std::string prior = "uniform";
  int agents = 1;
  long long trials = 1;
  long long round_cap = kDefaultRoundCap;

  void Register(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("simulate", "run seeded trials; one JSON line per trial");
    AddGraphOptions(sub, graph);
    AddAlgoOptions(sub, algo);
    sub->add_option("--start", start, "explicit start vertices, one per agent, e.g. 1,1,3");
    sub->add_option("--prior", prior, "start law when --start is absent")->capture_default_str();
    sub->add_option("--agents", agents, "agents placed together at the drawn start")
        ->capture_default_str();
    sub->add_option("--trials", trials, "number of trials")->capture_default_str();
    sub->add_option("--round-cap", round_cap, "rounds before a run counts as non-terminating")
        ->capture_default_str();
    AddSeed(sub, common);
    AddJobs(sub, common);
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    const PortLabeledGraph g = ResolveGraph(graph);
    const AlgorithmSpec spec = ResolveAlgo(algo, g.num_vertices());
    if (trials < 1) Invalid("trials", "must be positive");
    if (agents < 1) Invalid("agents", "must be positive");
    if (round_cap < 1) Invalid("round_cap", "must be positive");
    std::vector<Vertex> fixed;
    if (!start.empty()) {
      if (self->get_option("--agents")->count() > 0) Invalid("agents", "conflicts with --start");
      for (int v : ParseIntList(start, "start")) {
        if (!g.contains(v)) Invalid("start", "no vertex " + std::to_string(v));
        fixed.push_back(v);
      }
    }
    const Dist law = ResolvePrior(g, prior);
    const std::uint64_t seed = ResolveSeed(common);

    struct Slot {
      std::optional<RunResult> run;
      std::optional<NonTerminationError> stuck;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(trials));
    ParallelFor(slots.size(), common.jobs, [&](std::size_t i) {
      const std::uint64_t trial_seed = ChildSeed(seed, i);
      std::vector<Vertex> starts = fixed;
      if (starts.empty()) {
        Engine engine(trial_seed);
        const double draw = Uniform01(engine);
        Vertex v = 1;
        double cumulative = law(0);
        while (draw >= cumulative && v < g.num_vertices()) cumulative += law(v++);
        starts.assign(agents, v);
      }
      try {
        slots[i].run = RunMulti(g, spec, starts, Mix64(trial_seed), RunOptions{round_cap});
      } catch (const NonTerminationError& e) {
        slots[i].stuck = e;
      }
    });

    std::string text;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      Json line;
      line["trial"] = i;
      if (slots[i].stuck) {
        line.update(NonTerminationPayload(*slots[i].stuck));
        WriteText(text + line.dump() + "\n", common.out);
        return kExitNonTermination;
      }
      line["result"] = ToJson(*slots[i].run);
      text += line.dump() + "\n";
    }
    WriteText(text, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct AnalyzeCommand {
  GraphOptions graph;
  AlgoOptions algo;
  CommonOptions common;
  std::string prior = "uniform";
  std::string mode = "exact";
  long long trials = 10000;
  int agents = 1;
  long long t_max = 64;
  std::vector<int> sweep;

  void Register(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("analyze", "hiding quality U(X0; XT) of an algorithm");
    AddGraphOptions(sub, graph);
    AddAlgoOptions(sub, algo);
    sub->add_option("--prior", prior, "uniform, two_point:u,v, two_point:diameter or v=p,...")
        ->capture_default_str();
    sub->add_option("--mode", mode, "exact or mc")->capture_default_str();
    sub->add_option("--trials", trials, "Monte Carlo samples")->capture_default_str();
    sub->add_option("--agents", agents, "agents starting together (mc mode)")
        ->capture_default_str();
    sub->add_option("--t-max", t_max, "last t of the (t, U) plot series")->capture_default_str();
    sub->add_option("--sweep", sweep, "vertex counts for an n-sweep of --family")->delimiter(',');
    AddSeed(sub, common);
    AddJobs(sub, common);
    AddPlot(sub, common, "the (t, U) series, or (n, m, U) for a sweep");
    AddOutput(sub, common);
    self = sub;
  }

  HidingReport Evaluate(const PortLabeledGraph& g, const AlgorithmSpec& spec, const Dist& law,
                        std::uint64_t seed) const {
    if (ResolveMode(mode) == EvaluationMode::kExact) {
      if (agents != 1) Invalid("agents", "exact mode supports a single agent");
      return MakeHidingReport(ExactJoint(g, spec, law));
    }
    if (trials < 1) Invalid("trials", "must be positive");
    const LabeledJoint joint =
        McJoint(g, spec, AllAgentsAt(law, agents), trials, seed, common.jobs);
    return MakeHidingReport(joint.probs, EvaluationMode::kMonteCarlo, trials, seed);
  }

  int Run() {
    ApplyConfig(self, common.config);
    const std::uint64_t seed = ResolveSeed(common);
    if (!sweep.empty()) return RunSweep(seed);
    const PortLabeledGraph g = ResolveGraph(graph);
    const AlgorithmSpec spec = ResolveAlgo(algo, g.num_vertices());
    const Dist law = ResolvePrior(g, prior);
    Json out;
    out["graph"] = GraphSummary(g);
    out["algorithm"] = ToJson(spec);
    out["prior"] = prior;
    out["agents"] = agents;
    out["report"] = ToJson(Evaluate(g, spec, law, seed));
    if (!common.plot.empty()) {
      if (agents != 1) Invalid("emit_plot_data", "the (t, U) series needs a single agent");
      if (t_max < 0) Invalid("t_max", "must be non-negative");
      std::string csv = "t,uc\n";
      const auto series = HidingSeries(g, spec, law, t_max);
      for (std::size_t t = 0; t < series.size(); ++t) {
        csv += std::to_string(t) + "," + CsvNumber(series[t]) + "\n";
      }
      WriteText(csv, common.plot);
    }
    Emit(out, common.out);
    return 0;
  }

  int RunSweep(std::uint64_t seed) {
    if (!graph.graph.empty()) Invalid("sweep", "needs --family, not --graph");
    if (graph.family.empty()) Invalid("sweep", "needs --family");
    const GraphFamily family = ParseGraphFamily(graph.family);
    if (family != GraphFamily::kPath && family != GraphFamily::kCycle &&
        family != GraphFamily::kClique) {
      Invalid("sweep", "supported for path, cycle and clique");
    }
    Json rows = Json::array();
    std::string csv = "n,m,uc\n";
    for (int n : sweep) {
      GraphOptions member = graph;
      member.n = n;
      const PortLabeledGraph g = GenerateFamily(FamilySpec(member, graph.graph_seed));
      const AlgorithmSpec spec = ResolveAlgo(algo, n);
      const HidingReport report = Evaluate(g, spec, ResolvePrior(g, prior), seed);
      Json row;
      row["n"] = n;
      row["m"] = g.num_edges();
      row["algorithm"] = ToJson(spec);
      row["report"] = ToJson(report);
      rows.push_back(row);
      csv += std::to_string(n) + "," + std::to_string(g.num_edges()) + "," + CsvNumber(report.uc) +
             "\n";
    }
    Json out;
    out["family"] = std::string(GraphFamilyName(family));
    out["prior"] = prior;
    out["sweep"] = rows;
    if (!common.plot.empty()) WriteText(csv, common.plot);
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct MixingCommand {
  GraphOptions graph;
  CommonOptions common;
  double epsilon = 0.25;
  std::optional<long long> t_max;

  void Register(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("mixing", "mixing time of the lazy random walk");
    AddGraphOptions(sub, graph);
    sub->add_option("--epsilon", epsilon, "total-variation target")->capture_default_str();
    sub->add_option("--t-max", t_max, "search cap (default 8 n^3 ceil(log2(1/epsilon)))");
    AddPlot(sub, common, "the (t, d(t)) series up to t_mix");
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    const PortLabeledGraph g = ResolveGraph(graph);
    const TransitionMatrix P = LazyWalkMatrix(g);
    const Dist pi = StationaryDistribution(g);
    if (!(epsilon > 0.0 && epsilon < 1.0)) Invalid("epsilon", "must lie in (0, 1)");
    const long long cap = t_max ? *t_max : DefaultMixingCap(g.num_vertices(), epsilon);
    const long long t_mix = MixingTime(P, pi, epsilon, cap);
    Json out;
    out["graph"] = GraphSummary(g);
    out["walk"] = "lazy";
    out["epsilon"] = epsilon;
    out["t_max"] = cap;
    out["t_mix"] = t_mix;
    out["d_at_t_mix"] = DistanceToStationarity(P, pi, t_mix);
    if (!common.plot.empty()) {
      std::string csv = "t,d\n";
      TransitionMatrix Pt = TransitionMatrix::Identity(P.rows(), P.cols());
      for (long long t = 0; t <= t_mix; ++t) {
        csv += std::to_string(t) + "," + CsvNumber(WorstStartTv(Pt, pi)) + "\n";
        Pt = Pt * P;
      }
      WriteText(csv, common.plot);
    }
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct LemmaKnownCommand {
  GraphOptions graph;
  AlgoOptions algo;
  CommonOptions common;
  int u = 0;
  int v = 0;
  long long t = -1;
  std::string mode = "exact";
  long long trials = 1000;

  void Register(CLI::App* parent) {
    CLI::App* sub =
        parent->add_subcommand("lemma-known", "support-disjointness bound at a fixed round t");
    AddGraphOptions(sub, graph);
    AddAlgoOptions(sub, algo);
    sub->add_option("--u", u, "first prior vertex");
    sub->add_option("--v", v, "second prior vertex");
    sub->add_option("--t", t, "rounds before stopping");
    sub->add_option("--mode", mode, "exact or mc")->capture_default_str();
    sub->add_option("--trials", trials, "runs per start in mc mode")->capture_default_str();
    AddSeed(sub, common);
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    if (u == 0 || v == 0) Invalid("u/v", "both --u and --v are required");
    if (t < 0) Invalid("t", "required and non-negative");
    const PortLabeledGraph g = ResolveGraph(graph);
    const AlgorithmSpec spec = ResolveAlgo(algo, g.num_vertices());
    const LemmaKnownWitness w =
        LemmaKnownCheck(g, spec, t, u, v, trials, ResolveSeed(common), ResolveMode(mode));
    Json out;
    out["graph"] = GraphSummary(g);
    out["algorithm"] = ToJson(spec);
    out["witness"] = ToJson(w);
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct DHalfCommand {
  GraphOptions graph;
  AlgoOptions algo;
  CommonOptions common;
  long long trials = 1000;
  int agents = 1;

  void Register(CLI::App* parent) {
    CLI::App* sub = parent->add_subcommand(
        "d-half", "Pr[moves >= floor(D/2)] under a two-point diameter prior");
    AddGraphOptions(sub, graph);
    AddAlgoOptions(sub, algo);
    sub->add_option("--trials", trials, "trials for randomized algorithms")->capture_default_str();
    sub->add_option("--agents", agents, "agents starting together")->capture_default_str();
    AddSeed(sub, common);
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    const PortLabeledGraph g = ResolveGraph(graph);
    const AlgorithmSpec spec = ResolveAlgo(algo, g.num_vertices());
    Json out;
    out["graph"] = GraphSummary(g);
    out["algorithm"] = ToJson(spec);
    out["report"] = ToJson(FloorDHalfExperiment(g, spec, trials, ResolveSeed(common), agents));
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct ChainCliquesCommand {
  AlgoOptions algo;
  CommonOptions common;
  std::vector<int> x = {3, 4, 5};
  std::vector<int> y = {3, 5};
  int members = 50;
  int trials = 20;

  void Register(CLI::App* parent) {
    CLI::App* sub = parent->add_subcommand(
        "chain-cliques", "rounds to reach the middle of a chain of cliques, swept over x and y");
    AddAlgoOptions(sub, algo, "dfs");
    sub->add_option("--x", x, "clique sizes")->capture_default_str()->delimiter(',');
    sub->add_option("--y", y, "clique counts")->capture_default_str()->delimiter(',');
    sub->add_option("--members", members, "random chains per (x, y)")->capture_default_str();
    sub->add_option("--trials", trials, "runs per chain")->capture_default_str();
    AddSeed(sub, common);
    AddJobs(sub, common);
    AddPlot(sub, common, "the scaling table");
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    const AlgorithmSpec spec = ResolveAlgo(algo, 0);
    const auto rows =
        ChainCliquesScaling(x, y, spec, members, trials, ResolveSeed(common), common.jobs);
    Json table = Json::array();
    for (const ScalingRow& r : rows) {
      Json row;
      row["x"] = r.x;
      row["y"] = r.y;
      row["n"] = r.n;
      row["m"] = r.m;
      row["trials"] = r.trials;
      row["mean_steps"] = r.mean_steps;
      row["std_steps"] = r.std_steps;
      table.push_back(row);
    }
    Json out;
    out["algorithm"] = ToJson(spec);
    out["steps"] = "rounds until the agent first stands in the middle";
    out["rows"] = table;
    try {
      out["loglog_slope"] = LogLogSlope(rows);
    } catch (const Error&) {
      out["loglog_slope"] = nullptr;
    }
    if (!common.plot.empty()) WriteText(ScalingCsv(rows), common.plot);
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct ParityCommand {
  GraphOptions graph;
  CommonOptions common;
  long long t = -1;

  void Register(CLI::App* parent) {
    CLI::App* sub = parent->add_subcommand(
        "bipartite-parity", "non-lazy versus lazy walk under an opposite-color two-point prior");
    AddGraphOptions(sub, graph);
    sub->add_option("--t", t, "walk length");
    AddPlot(sub, common, "the (t, U non-lazy, U lazy) series");
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    if (t < 0) Invalid("t", "required and non-negative");
    const PortLabeledGraph g = ResolveGraph(graph);
    Json out;
    out["graph"] = GraphSummary(g);
    out["report"] = ToJson(BipartiteParityProbe(g, t));
    if (!common.plot.empty()) {
      std::string csv = "t,uc_non_lazy,uc_lazy\n";
      for (long long s = 0; s <= t; ++s) {
        const ParityReport r = BipartiteParityProbe(g, s);
        csv +=
            std::to_string(s) + "," + CsvNumber(r.uc_non_lazy) + "," + CsvNumber(r.uc_lazy) + "\n";
      }
      WriteText(csv, common.plot);
    }
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

struct TrapCommand {
  CommonOptions common;
  int d = 3;
  std::optional<int> p;

  void Register(CLI::App* parent) {
    CLI::App* sub = parent->add_subcommand(
        "double-star-trap", "bridge-port memoryless agent on double stars; loop certificates");
    sub->add_option("--d", d, "star degree")->capture_default_str();
    sub->add_option("--p", p, "bridge port (default: every p in 1..d+1)");
    AddOutput(sub, common);
    self = sub;
  }

  int Run() {
    ApplyConfig(self, common.config);
    std::vector<int> ports;
    if (p) {
      ports.push_back(*p);
    } else {
      for (int port = 1; port <= d + 1; ++port) ports.push_back(port);
    }
    Json reports = Json::array();
    bool all = true;
    for (int port : ports) {
      const TrapReport r = DoubleStarTrap(d, port);
      all = all && r.all_looped_within_2n;
      reports.push_back(ToJson(r));
    }
    Json out;
    out["reports"] = reports;
    out["all_looped_within_2n"] = all;
    Emit(out, common.out);
    return 0;
  }

  CLI::App* self = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hidekit: hiding algorithms for mobile agents on port-labeled graphs"};
  app.require_subcommand(1);
  GenerateCommand generate;
  SimulateCommand simulate;
  AnalyzeCommand analyze;
  MixingCommand mixing;
  LemmaKnownCommand lemma;
  DHalfCommand dhalf;
  ChainCliquesCommand chain;
  ParityCommand parity;
  TrapCommand trap;
  generate.Register(app);
  simulate.Register(app);
  analyze.Register(app);
  mixing.Register(app);
  CLI::App* lowerbound = app.add_subcommand("lowerbound", "lower-bound experiments");
  lowerbound->require_subcommand(1);
  lemma.Register(lowerbound);
  dhalf.Register(lowerbound);
  chain.Register(lowerbound);
  parity.Register(lowerbound);
  trap.Register(lowerbound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (*generate.self) return generate.Run();
    if (*simulate.self) return simulate.Run();
    if (*analyze.self) return analyze.Run();
    if (*mixing.self) return mixing.Run();
    if (*lemma.self) return lemma.Run();
    if (*dhalf.self) return dhalf.Run();
    if (*chain.self) return chain.Run();
    if (*parity.self) return parity.Run();
    if (*trap.self) return trap.Run();
  } catch (const NonTerminationError& e) {
    std::cout << NonTerminationPayload(e).dump(2) << "\n";
    return kExitNonTermination;
  } catch (const Error& e) {
    std::cerr << "hidekit: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
