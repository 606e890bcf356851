#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hidekit {

enum class ErrorCode {
  kDisconnectedGraph,
  kDuplicateEdge,
  kSelfLoop,
  kBadPortPermutation,
  kBadVertex,
  kBadParameters,
  kInvalidDistribution,
  kMismatchedSupport,
  kZeroInQ,
  kOutOfRange,
  kBadTerminationProbability,
  kDimensionMismatch,
  kNotMixedWithinCap,
  kRuleMissingDegree,
  kNonTermination,
  kUnsupportedAlgorithm,
  kBadVertices,
  kNotBipartite,
  kBadConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hidekit
