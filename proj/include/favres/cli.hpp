#pragma once

#include "favres/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace favres {

/// Shared numeric configuration assembled from command-line flags.
struct RunConfig {
    Int p = 3;
    int g = 1;
    int m = 1;
    Int delta_threshold = 5;
    long long budget = 10'000'000; // cap on exhaustively evaluated relations
    std::optional<Tuple> box;      // verification box override
    std::string out;               // output file path ("" = stdout only)
    std::uint64_t seed = 0;        // seed for sampled sweeps
    int jobs = 1;
};

/// Number of worker threads: the flag value when positive, otherwise the
/// FAVRES_JOBS environment variable, otherwise 1.
int effective_jobs(int flag_value);

/// Entry point used by both the binary and the tests. args excludes the
/// program name. Exit codes: 0 success, 1 internal error, 2 input-domain
/// error, 3 parse error, 4 verification-precondition error, 5 verification
/// failure, 6 search budget exhausted.
int run_cli(const std::vector<std::string>& args);

} // namespace favres
