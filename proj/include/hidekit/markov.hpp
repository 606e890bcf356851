#pragma once

// Random-walk kernels on port-labeled graphs and the total-variation
// machinery used to reason about their mixing.
//
// Transition matrices are row stochastic: row i is the law of the next state
// given the current state i (vertex id i + 1). Distributions propagate as row
// vectors, mu^T P^t, but are stored as column vectors like everywhere else.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "hidekit/error.hpp"
#include "hidekit/graph.hpp"
#include "hidekit/infotheory.hpp"

namespace hidekit {

template <typename Scalar>
using TransitionMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using TransitionMatrix = TransitionMatrixT<double>;

/// Stay with probability `stay`, otherwise move through a uniform port.
template <typename Scalar = double>
TransitionMatrixT<Scalar> StayOrMoveMatrix(const PortLabeledGraph& g, Scalar stay, Scalar move) {
  const int n = g.num_vertices();
  TransitionMatrixT<Scalar> P = TransitionMatrixT<Scalar>::Zero(n, n);
  for (Vertex v = 1; v <= n; ++v) {
    P(v - 1, v - 1) = stay;
    const Scalar per_port = move / Scalar(g.degree(v));
    for (const PortEdge& e : g.ports(v)) P(v - 1, e.to - 1) += per_port;
  }
  return P;
}

/// Lazy walk: stay 1/2, else a uniform neighbor.
template <typename Scalar = double>
TransitionMatrixT<Scalar> LazyWalkMatrix(const PortLabeledGraph& g) {
  return StayOrMoveMatrix<Scalar>(g, Scalar(1) / 2, Scalar(1) / 2);
}

/// Non-lazy simple random walk. Periodic on bipartite graphs.
template <typename Scalar = double>
TransitionMatrixT<Scalar> SimpleWalkMatrix(const PortLabeledGraph& g) {
  return StayOrMoveMatrix<Scalar>(g, Scalar(0), Scalar(1));
}

template <typename Scalar>
void CheckTerminationProbability(Scalar q) {
  if (!(q > Scalar(0) && q <= Scalar(1) / 2)) {
    throw Error(ErrorCode::kBadTerminationProbability,
                "q must lie in (0, 1/2], got " + std::to_string(static_cast<double>(q)));
  }
}

/// Movement kernel of the terminate-q / stay-1/2 / move-(1/2 - q) hider,
/// conditioned on the round not terminating.
template <typename Scalar = double>
TransitionMatrixT<Scalar> AlgorithmWalkMatrix(const PortLabeledGraph& g, Scalar q) {
  CheckTerminationProbability(q);
  const Scalar survive = Scalar(1) - q;
  return StayOrMoveMatrix<Scalar>(g, Scalar(1) / 2 / survive, (Scalar(1) / 2 - q) / survive);
}

/// pi(v) = deg(v) / 2m.
template <typename Scalar = double>
DistT<Scalar> StationaryDistribution(const PortLabeledGraph& g) {
  DistT<Scalar> pi(g.num_vertices());
  const Scalar total = Scalar(2 * g.num_edges());
  for (Vertex v = 1; v <= g.num_vertices(); ++v) pi(v - 1) = Scalar(g.degree(v)) / total;
  return pi;
}

template <typename Derived>
void ValidateTransitionMatrix(const Eigen::MatrixBase<Derived>& P) {
  if (P.rows() != P.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "transition matrix is not square");
  }
  for (Eigen::Index i = 0; i < P.rows(); ++i) ValidateDistribution(P.row(i));
}

/// P^t by repeated squaring.
template <typename Derived>
TransitionMatrixT<typename Derived::Scalar> MatrixPower(const Eigen::MatrixBase<Derived>& P,
                                                        long long t) {
  using Matrix = TransitionMatrixT<typename Derived::Scalar>;
  if (P.rows() != P.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix power of a non-square matrix");
  }
  if (t < 0) throw Error(ErrorCode::kBadParameters, "negative power");
  Matrix result = Matrix::Identity(P.rows(), P.cols());
  Matrix base = P;
  while (t > 0) {
    if (t & 1) result = result * base;
    t >>= 1;
    if (t > 0) base = base * base;
  }
  return result;
}

inline constexpr long long kLinearPropagationLimit = 64;

/// Law after t steps from mu: mu^T P^t.
template <typename DerivedD, typename DerivedP>
DistT<typename DerivedD::Scalar> Propagate(const Eigen::MatrixBase<DerivedD>& mu,
                                           const Eigen::MatrixBase<DerivedP>& P, long long t) {
  using Vector = DistT<typename DerivedD::Scalar>;
  if (P.rows() != P.cols() || mu.size() != P.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "distribution of size " + std::to_string(mu.size()) +
                                                   " vs matrix " + std::to_string(P.rows()) + "x" +
                                                   std::to_string(P.cols()));
  }
  if (t < 0) throw Error(ErrorCode::kBadParameters, "negative step count");
  if (t > kLinearPropagationLimit) {
    return (mu.transpose() * MatrixPower(P, t)).transpose();
  }
  Vector current = mu;
  for (long long s = 0; s < t; ++s) current = (current.transpose() * P).transpose();
  return current;
}

/// Half the L1 distance.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar TvDistance(const Eigen::MatrixBase<DerivedP>& p,
                                     const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kMismatchedSupport, "distributions have different sizes");
  }
  std::vector<Scalar> terms(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    using std::abs;
    terms[i] = abs(p(i) - q(i));
  }
  return SortedSum(std::move(terms)) / Scalar(2);
}

/// max_x TV(Pt(x, .), pi) for an already-powered matrix.
template <typename DerivedP, typename DerivedD>
typename DerivedP::Scalar WorstStartTv(const Eigen::MatrixBase<DerivedP>& Pt,
                                       const Eigen::MatrixBase<DerivedD>& pi) {
  using Scalar = typename DerivedP::Scalar;
  if (pi.size() != Pt.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "stationary law does not match matrix");
  }
  Scalar worst(0);
  for (Eigen::Index x = 0; x < Pt.rows(); ++x) {
    worst = std::max(worst, TvDistance(Pt.row(x).transpose(), pi));
  }
  return worst;
}

/// max_{x,y} TV(Pt(x, .), Pt(y, .)) for an already-powered matrix.
template <typename DerivedP>
typename DerivedP::Scalar WorstPairTv(const Eigen::MatrixBase<DerivedP>& Pt) {
  using Scalar = typename DerivedP::Scalar;
  Scalar worst(0);
  for (Eigen::Index x = 0; x < Pt.rows(); ++x) {
    for (Eigen::Index y = x + 1; y < Pt.rows(); ++y) {
      worst = std::max(worst, TvDistance(Pt.row(x).transpose(), Pt.row(y).transpose()));
    }
  }
  return worst;
}

/// d(t) = max_x TV(P^t(x, .), pi).
template <typename DerivedP, typename DerivedD>
typename DerivedP::Scalar DistanceToStationarity(const Eigen::MatrixBase<DerivedP>& P,
                                                 const Eigen::MatrixBase<DerivedD>& pi,
                                                 long long t) {
  if (P.rows() != P.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "transition matrix is not square");
  }
  return WorstStartTv(MatrixPower(P, t), pi);
}

/// d-bar(t) = max_{x,y} TV(P^t(x, .), P^t(y, .)).
template <typename DerivedP>
typename DerivedP::Scalar PairwiseDistance(const Eigen::MatrixBase<DerivedP>& P, long long t) {
  return WorstPairTv(MatrixPower(P, t));
}

/// Default cap on mixing-time searches, sized from the O(n^3) mixing bound
/// of lazy walks on connected graphs.
inline long long DefaultMixingCap(int n, double epsilon) {
  const long long n3 = static_cast<long long>(n) * n * n;
  return 8 * n3 * static_cast<long long>(std::ceil(std::log2(1.0 / epsilon)));
}

/// Least t with d(t) <= epsilon. Throws kNotMixedWithinCap past t_max.
template <typename DerivedP, typename DerivedD>
long long MixingTime(const Eigen::MatrixBase<DerivedP>& P, const Eigen::MatrixBase<DerivedD>& pi,
                     double epsilon, long long t_max) {
  using Matrix = TransitionMatrixT<typename DerivedP::Scalar>;
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "epsilon must lie in (0, 1)");
  }
  if (t_max < 1) throw Error(ErrorCode::kBadParameters, "t_max must be at least 1");
  ValidateTransitionMatrix(P);
  Matrix Pt = Matrix::Identity(P.rows(), P.cols());
  for (long long t = 0; t <= t_max; ++t) {
    if (static_cast<double>(WorstStartTv(Pt, pi)) <= epsilon) return t;
    Pt = Pt * P;
  }
  throw Error(ErrorCode::kNotMixedWithinCap,
              "d(t) > " + std::to_string(epsilon) + " for all t <= " + std::to_string(t_max));
}

/// Joint law of (X0, Xt) when X0 ~ prior and Xt | X0 follows the rows of
/// `kernel`.
template <typename DerivedD, typename DerivedK>
JointDistT<typename DerivedD::Scalar> JointFromKernel(const Eigen::MatrixBase<DerivedD>& prior,
                                                      const Eigen::MatrixBase<DerivedK>& kernel) {
  if (prior.size() != kernel.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior does not match kernel rows");
  }
  return prior.asDiagonal() * kernel;
}

struct MonotonicityReport {
  /// D(mu P^t || nu P^t) for t = 0..t_max; may contain +infinity.
  std::vector<double> kl;
  /// H(X0 | Xt) for X0 ~ (mu + nu) / 2.
  std::vector<double> conditional_entropy;
  bool monotone_kl_decreasing = true;
  bool monotone_cond_entropy_nondecreasing = true;
};

inline constexpr double kMonotonicitySlack = 1e-9;

template <typename DerivedP, typename DerivedMu, typename DerivedNu>
MonotonicityReport MonotonicityProbes(const Eigen::MatrixBase<DerivedP>& P,
                                      const Eigen::MatrixBase<DerivedMu>& mu,
                                      const Eigen::MatrixBase<DerivedNu>& nu, long long t_max) {
  using Scalar = typename DerivedP::Scalar;
  using Matrix = TransitionMatrixT<Scalar>;
  ValidateTransitionMatrix(P);
  if (mu.size() != P.rows() || nu.size() != P.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "probe distributions do not match matrix");
  }
  const DistT<Scalar> prior = (mu + nu) / Scalar(2);
  MonotonicityReport report;
  Matrix Pt = Matrix::Identity(P.rows(), P.cols());
  DistT<Scalar> mu_t = mu;
  DistT<Scalar> nu_t = nu;
  for (long long t = 0; t <= t_max; ++t) {
    report.kl.push_back(static_cast<double>(KlDivergence(mu_t, nu_t)));
    report.conditional_entropy.push_back(
        static_cast<double>(ConditionalEntropy(JointFromKernel(prior, Pt))));
    mu_t = (mu_t.transpose() * P).transpose();
    nu_t = (nu_t.transpose() * P).transpose();
    Pt = Pt * P;
  }
  for (std::size_t t = 1; t < report.kl.size(); ++t) {
    if (report.kl[t] > report.kl[t - 1] + kMonotonicitySlack) {
      report.monotone_kl_decreasing = false;
    }
    if (report.conditional_entropy[t] < report.conditional_entropy[t - 1] - kMonotonicitySlack) {
      report.monotone_cond_entropy_nondecreasing = false;
    }
  }
  return report;
}

}  // namespace hidekit
