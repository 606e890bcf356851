#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hidekit/graph.hpp"
#include "hidekit/serialize.hpp"

namespace hidekit {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome RunCli(const std::string& args, const std::string& env = "") {
  const std::string command = env + " " + HIDEKIT_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Outcome outcome;
  if (pipe == nullptr) return outcome;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) outcome.out.append(buffer, got);
  const int status = pclose(pipe);
  outcome.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return outcome;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hidekit_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string WriteConfig(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
    return Path(name);
  }

  std::string Path5() const {
    const std::string p = Path("path5.json");
    SaveGraph(MakePath(5), p);
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateChainOfCliques) {
  const Outcome r =
      RunCli("generate --family chain-of-cliques --x 4 --y 3 --seed 7 --out " + Path("chain.json"));
  ASSERT_EQ(r.code, 0);
  const Json summary = Json::parse(r.out);
  EXPECT_EQ(summary["n"], 16);
  EXPECT_EQ(summary["m"], 24);
  const PortLabeledGraph g = LoadGraph(Path("chain.json"));
  EXPECT_EQ(g, GenerateChainOfCliques(4, 3, 7).graph);
}

TEST_F(CliTest, GeneratePrintsDiameter) {
  const Outcome r = RunCli("generate --family path --n 5 --out " + Path("p.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["diameter"], 4);
}

TEST_F(CliTest, GenerateToStdoutRoundTrips) {
  const Outcome r = RunCli("generate --family double-star --d 3 --p 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(GraphFromJson(r.out), MakeDoubleStar(3, 4));
}

TEST_F(CliTest, GenerateRejectsBadPort) {
  EXPECT_EQ(RunCli("generate --family double-star --d 3 --p 5").code, 2);
}

TEST_F(CliTest, AnalyzeKnownTopologyIsPerfect) {
  const Outcome r = RunCli("analyze --algo go-to-min-id --graph " + Path5() +
                           " --prior two_point:1,5 --mode exact");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["report"]["uc"], 0.0);
}

TEST_F(CliTest, AnalyzeIsByteIdenticalOnRerun) {
  const std::string args = "analyze --algo rw-hider --q 0.01 --graph " + Path5() +
                           " --prior uniform --mode exact --seed 4";
  const Outcome a = RunCli(args);
  const Outcome b = RunCli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const double uc = Json::parse(a.out)["report"]["uc"];
  EXPECT_GT(uc, 0.0);
  EXPECT_LT(uc, 0.01);
}

TEST_F(CliTest, LemmaKnown) {
  const Outcome r = RunCli("lowerbound lemma-known --graph " + Path5() +
                           " --u 1 --v 5 --t 1 --algo go-to-min-id");
  ASSERT_EQ(r.code, 0);
  const Json w = Json::parse(r.out)["witness"];
  EXPECT_EQ(w["gamma"], 0.5);
  EXPECT_EQ(w["measured_mi"], 1.0);
}

TEST_F(CliTest, SimulateWritesOneLinePerTrial) {
  const Outcome r = RunCli("simulate --family cycle --n 6 --algo rw-hider --q 0.1 --trials 7");
  ASSERT_EQ(r.code, 0);
  std::stringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    EXPECT_EQ(j["trial"], count);
    ++count;
  }
  EXPECT_EQ(count, 7);
}

TEST_F(CliTest, SeedComesFromEnvironment) {
  const std::string args = "simulate --family cycle --n 6 --algo rw-hider --q 0.1 --trials 5";
  const Outcome env = RunCli(args, "HIDEKIT_SEED=42");
  const Outcome flag = RunCli(args + " --seed 42");
  const Outcome other = RunCli(args + " --seed 43");
  ASSERT_EQ(env.code, 0);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(env.out, other.out);
  EXPECT_EQ(RunCli(args, "HIDEKIT_SEED=abc").code, 2);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  const std::string args =
      "simulate --family path --n 8 --algo rw-hider --q 0.05 --trials 300 --seed 9";
  EXPECT_EQ(RunCli(args + " --jobs 4").out, RunCli(args).out);
  const std::string mc =
      "analyze --family path --n 6 --algo rw-hider --q 0.1 --mode mc --trials 3000 --seed 2";
  EXPECT_EQ(RunCli(mc + " --jobs 3").out, RunCli(mc).out);
}

TEST_F(CliTest, NonTerminationExitsThreeWithCertificate) {
  const Outcome r = RunCli(
      "simulate --family double-star --d 3 --p 2 --algo det-no-memory --rule 1:1,4:2 --start 1");
  EXPECT_EQ(r.code, 3);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"], "NonTermination");
  EXPECT_EQ(j["certificate"]["vertex"], 1);
}

TEST_F(CliTest, ConfigIsStrict) {
  const std::string unknown = WriteConfig("a.json", R"({"family": "path", "n": 4, "colour": 1})");
  EXPECT_EQ(RunCli("simulate --algo dfs --config " + unknown).code, 2);
  const std::string nested =
      WriteConfig("b.json", R"({"graph": {"family": "path", "n": 4, "size": 3}, "algo": "dfs"})");
  EXPECT_EQ(RunCli("simulate --config " + nested).code, 2);
  const std::string malformed = WriteConfig("c.json", R"({"family": )");
  EXPECT_EQ(RunCli("simulate --algo dfs --config " + malformed).code, 2);
  const std::string wrong_type = WriteConfig("d.json", R"({"family": "path", "n": "four"})");
  EXPECT_EQ(RunCli("simulate --algo dfs --config " + wrong_type).code, 2);
}

TEST_F(CliTest, ConfigMatchesFlagsAndFlagsWin) {
  const std::string config = WriteConfig(
      "run.json",
      R"({"graph": {"family": "cycle", "n": 6}, "algorithm": {"kind": "rw-hider", "q": 0.1},
          "trials": 4, "seed": 8})");
  const Outcome from_config = RunCli("simulate --config " + config);
  const Outcome from_flags =
      RunCli("simulate --family cycle --n 6 --algo rw-hider --q 0.1 --trials 4 --seed 8");
  ASSERT_EQ(from_config.code, 0);
  EXPECT_EQ(from_config.out, from_flags.out);
  EXPECT_EQ(
      RunCli("simulate --config " + config + " --seed 9").out,
      RunCli("simulate --family cycle --n 6 --algo rw-hider --q 0.1 --trials 4 --seed 9").out);
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  EXPECT_EQ(RunCli("analyze --algo rw-hider --q 0.9 --family path --n 4").code, 2);
  EXPECT_EQ(RunCli("analyze --algo dfs --family path --n 4 --prior two_point:2,2").code, 2);
  EXPECT_EQ(RunCli("analyze --algo teleport --family path --n 4").code, 2);
  EXPECT_EQ(RunCli("analyze --algo dfs").code, 2);
  EXPECT_EQ(RunCli("lowerbound bipartite-parity --family cycle --n 5 --t 3").code, 2);
  EXPECT_EQ(RunCli("mixing --family cycle --n 8 --epsilon 0.01 --t-max 3").code, 2);
  EXPECT_EQ(RunCli("simulate --family path --n 3 --algo dfs --start 4").code, 2);
  EXPECT_EQ(RunCli("frobnicate").code, 2);
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST_F(CliTest, PlotDataIsCsv) {
  ASSERT_EQ(RunCli("mixing --family cycle --n 8 --emit-plot-data " + Path("d.csv")).code, 0);
  const std::string mixing = ReadFile(Path("d.csv"));
  EXPECT_EQ(mixing.substr(0, mixing.find('\n')), "t,d");
  EXPECT_EQ(std::count(mixing.begin(), mixing.end(), '\n'), 8);  // header plus t = 0..6

  ASSERT_EQ(RunCli("analyze --algo rw-hider --q 0.1 --family path --n 4 --t-max 10 "
                   "--emit-plot-data " +
                   Path("u.csv"))
                .code,
            0);
  const std::string series = ReadFile(Path("u.csv"));
  EXPECT_EQ(series.substr(0, series.find('\n')), "t,uc");
  EXPECT_EQ(std::count(series.begin(), series.end(), '\n'), 12);

  ASSERT_EQ(RunCli("lowerbound chain-cliques --x 3 --y 3 --members 2 --trials 2 "
                   "--emit-plot-data " +
                   Path("s.csv"))
                .code,
            0);
  const std::string scaling = ReadFile(Path("s.csv"));
  EXPECT_EQ(scaling.substr(0, scaling.find('\n')), "x,y,n,m,trials,mean_steps,std_steps");
}

TEST_F(CliTest, OutputFilesAreByteIdentical) {
  const std::vector<std::string> commands = {
      "generate --family chain-of-cliques --x 5 --y 2 --seed 3",
      "simulate --family path --n 6 --algo rw-hider --q 0.05 --trials 20 --seed 1",
      "analyze --family cycle --n 6 --algo rw-hider --q 0.1 --mode mc --trials 500 --seed 1",
      "mixing --family clique --n 5",
      "lowerbound d-half --family path --n 7 --algo rw-hider --q 0.05 --trials 50 --seed 2",
      "lowerbound chain-cliques --x 3,4 --y 3 --members 3 --trials 3 --seed 5",
      "lowerbound double-star-trap --d 2",
  };
  for (const auto& command : commands) {
    ASSERT_EQ(RunCli(command + " --out " + Path("a.out")).code, 0) << command;
    ASSERT_EQ(RunCli(command + " --out " + Path("b.out")).code, 0) << command;
    EXPECT_EQ(ReadFile(Path("a.out")), ReadFile(Path("b.out"))) << command;
    EXPECT_FALSE(ReadFile(Path("a.out")).empty()) << command;
  }
}

TEST_F(CliTest, SweepReportsTrend) {
  const Outcome r =
      RunCli("analyze --family cycle --sweep 4,6,8 --algo rw-hider --prior two_point:diameter");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["sweep"].size(), 3u);
  EXPECT_EQ(j["sweep"][2]["n"], 8);
  EXPECT_FALSE(j.contains("well_hiding"));
  EXPECT_EQ(RunCli("analyze --graph " + Path5() + " --sweep 4,6 --algo dfs").code, 2);
}

}  // namespace
}  // namespace hidekit
