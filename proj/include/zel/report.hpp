#pragma once

// Verification reports.  Every check produces one CheckReport; structured
// output wraps a batch of them in a document via make_document.  Documents
// are deterministic: no timestamps, no machine identifiers, big integers as
// decimal strings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace zel::report {

// Orientation convention, recorded once per structured document.  It pins
// the two sign choices everything else depends on: the coordinate of the
// unit-contraction trivialization on a rank-1 stalk with Frobenius acting by
// c is (1 - c)^{-1}, and u denotes the geometric Frobenius generator of the
// level ring.  All checks in the suite pass under this single convention;
// tests assert that the tag appears exactly once per document.
inline constexpr const char* kConventionTag =
    "rank1-coordinate=(1-c)^-1;u=geometric-frobenius";

enum class Verdict { Pass, Fail, Inconclusive, HypothesisFailure };

const char* to_string(Verdict v);

struct CheckReport {
    std::string check;   // operation name, e.g. "zeta_eq_element"
    std::string object;  // description of the object checked
    std::int64_t p = 0;
    int k = 0;
    std::optional<int> n;  // group-ring level when present, else plain Z/p^k
    nlohmann::ordered_json lhs;
    nlohmann::ordered_json rhs;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;  // reason for Inconclusive / HypothesisFailure, or ""
    std::optional<std::uint64_t> seed;  // replay seed for randomized inputs
};

nlohmann::ordered_json to_json(const CheckReport& r);
std::string to_text(const CheckReport& r);

// Full structured document for one command invocation.  The convention tag
// appears here and only here.
nlohmann::ordered_json make_document(const std::string& command,
                                     const nlohmann::ordered_json& parameters,
                                     const std::vector<CheckReport>& reports);

// Same envelope for commands whose payload is not a report batch (count
// tables, zeta reconstructions); the body lands under "result".
nlohmann::ordered_json make_document(const std::string& command,
                                     const nlohmann::ordered_json& parameters,
                                     const nlohmann::ordered_json& result);

}  // namespace zel::report
