#pragma once

// JSON forms of specs, runs and reports. Output key order is fixed, so equal
// values always serialize to equal bytes.

#include "hidekit/algorithms.hpp"
#include "hidekit/analyze.hpp"
#include "hidekit/simulate.hpp"
#include "json.hpp"

namespace hidekit {

using Json = nlohmann::ordered_json;

Json ToJson(const AlgorithmSpec& algo);
/// Strict: unknown keys and missing required fields raise kBadConfig.
AlgorithmSpec AlgorithmSpecFromJson(const Json& j);

Json ToJson(const Trace& trace);
Json ToJson(const Configuration& c);
Json ToJson(const RunResult& run);
Json ToJson(const LoopCertificate& certificate);
/// Outcome label -> probability; zero entries are omitted.
Json DistToJson(const Dist& d);
Json ToJson(const HidingReport& report);
Json ToJson(const LemmaKnownWitness& witness);
Json ToJson(const FloorDHalfReport& report);
Json ToJson(const ParityReport& report);
Json ToJson(const TrapReport& report);

}  // namespace hidekit
