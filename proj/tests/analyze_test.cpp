#include "hidekit/analyze.hpp"

#include <gtest/gtest.h>

#include "hidekit/markov.hpp"
#include "test_support.hpp"

namespace hidekit {
namespace {

using testing::StandardGraphSet;

TEST(PriorTest, Shapes) {
  const auto p4 = MakePath(4);
  EXPECT_TRUE(UniformPrior(p4).isApprox(Dist::Constant(4, 0.25)));
  const Dist two = TwoPointPrior(p4, 1, 4);
  EXPECT_EQ(two(0), 0.5);
  EXPECT_EQ(two(3), 0.5);
  try {
    TwoPointPrior(p4, 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadVertices);
  }
  const StartPrior all = AllAgentsAt(two, 3);
  ASSERT_EQ(all.placements.size(), 2u);
  EXPECT_EQ(all.placements[1], (std::vector<Vertex>{4, 4, 4}));
}

TEST(ExactJointTest, Marginals) {
  const auto g = MakeCycle(6);
  const Dist prior = UniformPrior(g);
  const JointDist joint = ExactJoint(g, AlgorithmSpec::RandomWalkHider(0.1), prior);
  EXPECT_LT((RowMarginal(joint) - prior).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(joint.sum(), 1.0, 1e-12);
  // The uniform law is stationary for the walk on a regular graph.
  EXPECT_LT((ColumnMarginal(joint) - prior).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(ExactJoint(g, AlgorithmSpec::GoToMinId(), Dist::Constant(3, 1.0 / 3)), Error);
}

TEST(HidingTest, KnownTopologyAndDfsArePerfect) {
  for (const auto& [name, g] : StandardGraphSet()) {
    const auto [u, v] = DiameterPair(g);
    for (const Dist& prior : {UniformPrior(g), TwoPointPrior(g, u, v)}) {
      for (auto algo : {AlgorithmSpec::GoToMinId(), AlgorithmSpec::DfsMinId()}) {
        const HidingReport r = MakeHidingReport(ExactJoint(g, algo, prior));
        EXPECT_NEAR(r.uc, 0.0, 1e-12) << name;
        EXPECT_NEAR(r.mi, 0.0, 1e-12) << name;
      }
    }
  }
}

TEST(HidingTest, MonteCarloAgreesWithExact) {
  const auto p3 = MakePath(3);
  const auto algo = AlgorithmSpec::RandomWalkHider(0.01);
  const Dist prior = UniformPrior(p3);
  const double exact = MutualInformation(ExactJoint(p3, algo, prior));
  const LabeledJoint mc = McJoint(p3, algo, AllAgentsAt(prior, 1), 200'000, 5);
  EXPECT_NEAR(MutualInformation(mc.probs), exact, 0.01);
  EXPECT_EQ(mc.row_labels, (std::vector<std::string>{"1:1", "2:1", "3:1"}));
}

TEST(HidingTest, MonteCarloErrorShrinks) {
  const auto g = MakePath(4);
  const auto algo = AlgorithmSpec::RandomWalkHider(0.2);
  const Dist prior = TwoPointPrior(g, 1, 4);
  const double exact = UncertaintyCoefficient(ExactJoint(g, algo, prior));
  const auto error = [&](long long samples) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const LabeledJoint mc = McJoint(g, algo, AllAgentsAt(prior, 1), samples, seed);
      total += std::abs(UncertaintyCoefficient(mc.probs) - exact);
    }
    return total / 8;
  };
  EXPECT_LT(error(40'000), error(400));
}

TEST(HidingTest, TwoAgentsTogether) {
  const auto g = MakePath(3);
  const Dist prior = TwoPointPrior(g, 1, 3);
  const LabeledJoint det = McJoint(g, AlgorithmSpec::GoToMinId(), AllAgentsAt(prior, 2), 100, 1);
  EXPECT_EQ(det.col_labels, std::vector<std::string>{"1:2"});
  EXPECT_NEAR(UncertaintyCoefficient(det.probs), 0.0, 1e-12);
  const LabeledJoint rw =
      McJoint(g, AlgorithmSpec::RandomWalkHider(0.3), AllAgentsAt(prior, 2), 20'000, 1);
  EXPECT_EQ(rw.row_labels, (std::vector<std::string>{"1:2", "3:2"}));
  EXPECT_NEAR(rw.probs.sum(), 1.0, 1e-12);
  // Two independent agents reveal more than one.
  EXPECT_GT(UncertaintyCoefficient(rw.probs),
            UncertaintyCoefficient(ExactJoint(g, AlgorithmSpec::RandomWalkHider(0.3), prior)));
}

TEST(LemmaKnownTest, PathOfFiveTruncatedAtOne) {
  const auto p5 = MakePath(5);
  const LemmaKnownWitness w = LemmaKnownCheck(p5, AlgorithmSpec::GoToMinId(), 1, 1, 5);
  EXPECT_EQ(w.reachable_from_u, std::vector<Vertex>{1});
  EXPECT_EQ(w.reachable_from_v, std::vector<Vertex>{4});
  EXPECT_EQ(w.gamma, 0.5);
  EXPECT_NEAR(w.measured_mi, 1.0, 1e-9);
  EXPECT_NEAR(w.measured_uc, 1.0, 1e-9);
  EXPECT_GE(w.measured_mi, w.eta_bound - 1e-9);
  EXPECT_EQ(w.eta_bound, 1.0);
}

TEST(LemmaKnownTest, OverlappingSupportsGiveNoBound) {
  const auto p5 = MakePath(5);
  const LemmaKnownWitness w = LemmaKnownCheck(p5, AlgorithmSpec::GoToMinId(), 4, 1, 5);
  EXPECT_EQ(w.gamma, -0.5);
  EXPECT_EQ(w.eta_bound, 0.0);
  EXPECT_NEAR(w.measured_mi, 0.0, 1e-12);
}

TEST(LemmaKnownTest, MonteCarloMode) {
  const auto p5 = MakePath(5);
  const LemmaKnownWitness w = LemmaKnownCheck(p5, AlgorithmSpec::RandomWalkHider(0.1), 1, 1, 5,
                                              2000, 3, EvaluationMode::kMonteCarlo);
  EXPECT_EQ(w.reachable_from_u, (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(w.reachable_from_v, (std::vector<Vertex>{4, 5}));
  EXPECT_EQ(w.gamma, 0.5);
  EXPECT_NEAR(w.measured_mi, 1.0, 1e-12);
  EXPECT_EQ(w.samples, 2000);
  EXPECT_THROW(LemmaKnownCheck(p5, AlgorithmSpec::GoToMinId(), 1, 1, 1), Error);
}

TEST(FloorDHalfTest, PathOfFive) {
  const auto p5 = MakePath(5);
  const FloorDHalfReport r = FloorDHalfExperiment(p5, AlgorithmSpec::GoToMinId(), 0, 0);
  EXPECT_EQ(r.diameter, 4);
  EXPECT_EQ(r.threshold, 2);
  // From 1 the agent never moves; from 5 it moves 4 times.
  EXPECT_EQ(r.pr_moves_at_least, 0.5);
  EXPECT_NEAR(r.hiding.uc, 0.0, 1e-12);

  const FloorDHalfReport frozen =
      FloorDHalfExperiment(p5, AlgorithmSpec::GoToMinId().Truncated(0), 0, 0);
  EXPECT_EQ(frozen.pr_moves_at_least, 0.0);
  EXPECT_NEAR(frozen.hiding.uc, 1.0, 1e-12);
}

TEST(FloorDHalfTest, HoldsOnFamilies) {
  for (const auto& [name, g] : StandardGraphSet()) {
    const FloorDHalfReport r = FloorDHalfExperiment(g, AlgorithmSpec::GoToMinId(), 0, 0);
    EXPECT_GE(r.pr_moves_at_least, 0.5) << name;
  }
}

TEST(FloorDHalfTest, RandomizedAndMultiAgent) {
  const auto p5 = MakePath(5);
  const FloorDHalfReport rw =
      FloorDHalfExperiment(p5, AlgorithmSpec::RandomWalkHider(0.05), 500, 9);
  EXPECT_EQ(rw.mode, EvaluationMode::kMonteCarlo);
  EXPECT_EQ(rw.trials, 500);
  EXPECT_GT(rw.pr_moves_at_least, 0.0);
  const FloorDHalfReport two = FloorDHalfExperiment(p5, AlgorithmSpec::DfsMinId(), 0, 0, 2);
  EXPECT_EQ(two.pr_moves_at_least, 1.0);
  EXPECT_NEAR(two.hiding.uc, 0.0, 1e-12);
}

// Exact U of the randomized hider under a two-point diameter prior, from a
// numpy resolvent evaluation.
struct TrendOracle {
  double q;
  double p8;
  double c8;
};
constexpr TrendOracle kTrend[] = {
    {0.2, 0.9147, 0.6163},     {0.1, 0.6666, 0.2827},      {0.05, 0.3747, 0.1041},
    {0.01, 0.04112, 0.006157}, {0.001, 0.000576, 6.84e-5},
};

double TwoPointU(const PortLabeledGraph& g, double q) {
  const auto [u, v] = DiameterPair(g);
  return UncertaintyCoefficient(
      ExactJoint(g, AlgorithmSpec::RandomWalkHider(q), TwoPointPrior(g, u, v)));
}

TEST(HidingTrendTest, MatchesOracleAndDecreases) {
  double previous_p8 = 1.0;
  double previous_c8 = 1.0;
  for (const auto& row : kTrend) {
    const double p8 = TwoPointU(MakePath(8), row.q);
    const double c8 = TwoPointU(MakeCycle(8), row.q);
    EXPECT_NEAR(p8, row.p8, row.p8 * 1e-3) << "q=" << row.q;
    EXPECT_NEAR(c8, row.c8, row.c8 * 1e-2) << "q=" << row.q;
    EXPECT_LE(p8, previous_p8 + 1e-6);
    EXPECT_LE(c8, previous_c8 + 1e-6);
    previous_p8 = p8;
    previous_c8 = c8;
  }
  EXPECT_LE(previous_p8, 0.05);
  EXPECT_LE(previous_c8, 0.05);
}

TEST(HidingSeriesTest, ConditionalEntropyNeverDrops) {
  const auto g = MakePath(6);
  const Dist prior = UniformPrior(g);
  const auto series = HidingSeries(g, AlgorithmSpec::RandomWalkHider(0.05), prior, 40);
  ASSERT_EQ(series.size(), 41u);
  EXPECT_NEAR(series[0], 1.0, 1e-12);
  for (std::size_t t = 1; t < series.size(); ++t) EXPECT_LE(series[t], series[t - 1] + 1e-9);
  // H(X0 | X_t) = H(X0) (1 - U), so U non-increasing is the same statement.
  const auto walk = MonotonicityProbes(LazyWalkMatrix(g), prior, prior, 64);
  for (std::size_t t = 1; t < walk.conditional_entropy.size(); ++t) {
    EXPECT_GE(walk.conditional_entropy[t], walk.conditional_entropy[t - 1] - 1e-9);
  }
}

TEST(HidingSeriesTest, DeterministicSeriesOnPath) {
  const auto p5 = MakePath(5);
  const auto series = HidingSeries(p5, AlgorithmSpec::GoToMinId(), UniformPrior(p5), 6);
  EXPECT_NEAR(series[0], 1.0, 1e-12);
  EXPECT_NEAR(series.back(), 0.0, 1e-12);
  EXPECT_NEAR(series[4], 0.0, 1e-12);
  EXPECT_GT(series[3], 0.0);
}

TEST(ParityTest, CycleOfFour) {
  const ParityReport r = BipartiteParityProbe(MakeCycle(4), 8);
  EXPECT_EQ(r.u, 1);
  EXPECT_EQ(r.v, 2);
  EXPECT_NEAR(r.uc_non_lazy, 1.0, 1e-12);
  EXPECT_LT(r.uc_lazy, 0.99);
  for (long long t : {1, 2, 7, 50}) {
    EXPECT_NEAR(BipartiteParityProbe(MakeCycle(4), t).uc_non_lazy, 1.0, 1e-12);
  }
  try {
    BipartiteParityProbe(MakeCycle(5), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotBipartite);
  }
}

TEST(TrapTest, EveryStartLoops) {
  for (int p = 1; p <= 4; ++p) {
    const TrapReport r = DoubleStarTrap(3, p);
    EXPECT_EQ(r.n, 8);
    EXPECT_TRUE(r.all_looped_within_2n) << "p=" << p;
    for (const auto& o : r.outcomes) {
      EXPECT_FALSE(o.terminated);
      EXPECT_TRUE(o.certificate.has_value());
    }
  }
}

TEST(ChainScalingTest, SingleCliqueIsAlreadyTheMiddle) {
  const auto rows = ChainCliquesScaling({3, 4}, {1}, AlgorithmSpec::DfsMinId(), 3, 4, 1);
  for (const auto& r : rows) {
    EXPECT_EQ(r.mean_steps, 0.0);
    EXPECT_EQ(r.trials, 12);
  }
}

TEST(ChainScalingTest, MiddleSets) {
  const ChainOfCliques odd = GenerateChainOfCliques(3, 3, 2);
  const auto middle = ChainMiddle(odd);
  EXPECT_EQ(middle.size(), 5u);
  const ChainOfCliques even = GenerateChainOfCliques(3, 4, 2);
  const auto bridge = ChainMiddle(even);
  ASSERT_EQ(bridge.size(), 2u);
  EXPECT_TRUE(even.graph.adjacent(bridge[0], bridge[1]));
}

TEST(ChainScalingTest, GrowsWithLength) {
  const auto rows = ChainCliquesScaling({4}, {3, 5, 7}, AlgorithmSpec::DfsMinId(), 10, 10, 4);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows[0].mean_steps, rows[1].mean_steps);
  EXPECT_LT(rows[1].mean_steps, rows[2].mean_steps);
  EXPECT_GT(LogLogSlope(rows), 0.0);
  const std::string csv = ScalingCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,n,m,trials,mean_steps,std_steps");
}

TEST(ChainScalingTest, RandomWalkHiderReachesTheMiddle) {
  const ChainOfCliques chain = GenerateChainOfCliques(3, 3, 5);
  const auto algo = AlgorithmSpec::RandomWalkHider(0.01);
  EXPECT_GT(RoundsToMiddle(chain, algo, chain.cliques[0][0], 1), 0);
  EXPECT_THROW(RoundsToMiddle(chain, AlgorithmSpec::GoToMinId(), chain.cliques[0][0], 1), Error);
}

TEST(ChainScalingTest, Reproducible) {
  const auto a = ChainCliquesScaling({3}, {3}, AlgorithmSpec::DfsMinId(), 5, 5, 11);
  const auto b = ChainCliquesScaling({3}, {3}, AlgorithmSpec::DfsMinId(), 5, 5, 11);
  EXPECT_EQ(ScalingCsv(a), ScalingCsv(b));
}

}  // namespace
}  // namespace hidekit
