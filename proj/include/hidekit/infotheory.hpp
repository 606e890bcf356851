#pragma once

// Finite-alphabet information measures, in bits.
//
// Distributions are dense Eigen column vectors indexed by outcome; joint
// distributions are dense matrices with the conditioned-on variable X along
// rows and the observation Y along columns. All functions accept any Eigen
// expression and are templated on its scalar type.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hidekit/error.hpp"

namespace hidekit {

template <typename Scalar>
using DistT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using JointDistT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Dist = DistT<double>;
using JointDist = JointDistT<double>;

inline constexpr double kValidationTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-9;

/// Sum in ascending order so results do not depend on outcome labeling.
template <typename Scalar>
Scalar SortedSum(std::vector<Scalar> terms) {
  std::sort(terms.begin(), terms.end());
  Scalar total(0);
  for (const Scalar& t : terms) total += t;
  return total;
}

template <typename Derived>
void ValidateDistribution(const Eigen::MatrixBase<Derived>& p,
                          double tolerance = kValidationTolerance) {
  using Scalar = typename Derived::Scalar;
  if (p.size() == 0) throw Error(ErrorCode::kInvalidDistribution, "empty distribution");
  std::vector<Scalar> terms;
  terms.reserve(p.size());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const Scalar v = p(i, j);
      if (!(v >= Scalar(0)) || !std::isfinite(static_cast<double>(v))) {
        throw Error(ErrorCode::kInvalidDistribution, "negative or non-finite probability at (" +
                                                         std::to_string(i) + "," +
                                                         std::to_string(j) + ")");
      }
      terms.push_back(v);
    }
  }
  const double total = static_cast<double>(SortedSum(std::move(terms)));
  if (std::abs(total - 1.0) > tolerance) {
    throw Error(ErrorCode::kInvalidDistribution, "probabilities sum to " + std::to_string(total));
  }
}

/// -p log2 p with the 0 log 0 = 0 convention.
template <typename Scalar>
Scalar SelfInformationTerm(Scalar p) {
  using std::log2;
  return p > Scalar(0) ? -p * log2(p) : Scalar(0);
}

template <typename Derived>
typename Derived::Scalar Entropy(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  ValidateDistribution(p);
  std::vector<Scalar> terms;
  terms.reserve(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) terms.push_back(SelfInformationTerm(p(i)));
  return std::max(Scalar(0), SortedSum(std::move(terms)));
}

template <typename Derived>
DistT<typename Derived::Scalar> RowMarginal(const Eigen::MatrixBase<Derived>& joint) {
  return joint.rowwise().sum();
}

template <typename Derived>
DistT<typename Derived::Scalar> ColumnMarginal(const Eigen::MatrixBase<Derived>& joint) {
  return joint.colwise().sum().transpose();
}

/// H(X | Y) for a joint with X on rows and Y on columns.
template <typename Derived>
typename Derived::Scalar ConditionalEntropy(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  using std::log2;
  ValidateDistribution(joint);
  const DistT<Scalar> py = ColumnMarginal(joint);
  std::vector<Scalar> terms;
  for (Eigen::Index y = 0; y < joint.cols(); ++y) {
    if (py(y) <= Scalar(0)) continue;
    for (Eigen::Index x = 0; x < joint.rows(); ++x) {
      const Scalar pxy = joint(x, y);
      if (pxy > Scalar(0)) terms.push_back(-pxy * log2(pxy / py(y)));
    }
  }
  return std::max(Scalar(0), SortedSum(std::move(terms)));
}

/// I(X; Y) = H(X) - H(X | Y), floored at 0 against rounding.
template <typename Derived>
typename Derived::Scalar MutualInformation(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  const Scalar hx = Entropy(RowMarginal(joint));
  return std::max(Scalar(0), hx - ConditionalEntropy(joint));
}

/// U(X; Y) = I(X; Y) / H(X), defined as 0 when H(X) = 0.
template <typename Derived>
typename Derived::Scalar UncertaintyCoefficient(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  const Scalar hx = Entropy(RowMarginal(joint));
  if (hx <= Scalar(0)) return Scalar(0);
  const Scalar u = MutualInformation(joint) / hx;
  return std::clamp(u, Scalar(0), Scalar(1));
}

/// D(p || q) in bits. Returns +infinity when p puts mass where q has none.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar KlDivergence(const Eigen::MatrixBase<DerivedP>& p,
                                       const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::log2;
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error(ErrorCode::kMismatchedSupport, "distributions have different sizes");
  }
  ValidateDistribution(p);
  ValidateDistribution(q);
  std::vector<Scalar> terms;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const Scalar pi = p(i, j);
      const Scalar qi = q(i, j);
      if (pi <= Scalar(0)) continue;
      if (qi <= Scalar(0)) return std::numeric_limits<Scalar>::infinity();
      terms.push_back(pi * log2(pi / qi));
    }
  }
  return std::max(Scalar(0), SortedSum(std::move(terms)));
}

/// (1 / ln 2) (sum p^2 / q - 1), an upper bound on D(p || q).
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar KlUpperBound(const Eigen::MatrixBase<DerivedP>& p,
                                       const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::log;
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error(ErrorCode::kMismatchedSupport, "distributions have different sizes");
  }
  ValidateDistribution(p);
  ValidateDistribution(q);
  std::vector<Scalar> terms;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p(i);
    const Scalar qi = q(i);
    if (qi <= Scalar(0)) {
      if (pi > Scalar(0)) {
        throw Error(ErrorCode::kZeroInQ, "q vanishes at outcome " + std::to_string(i));
      }
      continue;
    }
    terms.push_back(pi * pi / qi);
  }
  return (SortedSum(std::move(terms)) - Scalar(1)) / log(Scalar(2));
}

/// f(p) = -(p log2 p + (1 - p) log2 (1 - p)).
template <typename Scalar>
Scalar BinaryEntropy(Scalar p) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    throw Error(ErrorCode::kOutOfRange, "binary entropy argument outside [0,1]");
  }
  return SelfInformationTerm(p) + SelfInformationTerm(Scalar(1) - p);
}

/// Outer product of the marginals of `joint`.
template <typename Derived>
JointDistT<typename Derived::Scalar> ProductOfMarginals(const Eigen::MatrixBase<Derived>& joint) {
  return RowMarginal(joint) * ColumnMarginal(joint).transpose();
}

}  // namespace hidekit
