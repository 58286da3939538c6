#pragma once

// Command implementations behind the zel binary, separated from argument
// parsing so tests can drive them in-process. run_job never throws: every
// failure becomes an exit code and a message.
//
// Exit codes: 0 for clean runs (Pass, Inconclusive, and HypothesisFailure
// verdicts included), 1 when any check reports Fail or a cache spot check
// disagrees with recomputation, 2 for unusable input (bad flags, parse
// errors, budget refusal).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zel/variety.hpp"

namespace zel::cli {

struct JobConfig {
    std::string command;     // count | zeta | euler | verify | catalog
    std::string identity;    // verify only: 1.3.5 | 1.3.6 | 2.1.3 | 2.1.4 | 2.1.5 | norm
    std::string scheme_path; // --scheme
    std::string phi_inline;  // --phi, JSON
    std::string name;        // --name, catalog entry
    std::int64_t ch = 2;     // --ch, catalog base characteristic
    int fdeg = 1;            // --fdeg, catalog base field degree
    std::int64_t p = 0;      // --p
    int k = 1;               // --k
    std::optional<int> n;    // --n, group-ring level
    std::optional<int> n2;   // --n2, coarser level for base change
    int deg = 1;             // --deg, point or induction degree
    std::vector<int> chain;  // --chain, divisor chain for norm systems
    int N = 0;               // --N, series order / number of extensions
    std::uint64_t budget = variety::kDefaultBudget; // --budget
    std::string cache_dir;   // --cache
    bool verify_cache = false; // --verify-cache
    std::string format = "text"; // --format text | structured
    std::optional<std::uint64_t> seed; // --seed, randomized batch
    int batch = 20;          // --batch, randomized batch size
};

struct JobResult {
    int exit_code = 0;
    std::string output; // complete payload, newline terminated
};

JobResult run_job(const JobConfig& cfg);

} // namespace zel::cli
