#pragma once

#include <cstdint>
#include <utility>

#include "permpat/oracle.hpp"
#include "permpat/pattern.hpp"

namespace permpat {

struct Verdict {
    bool reject = false;
    std::optional<PatternCopy> witness;  // present and validated on reject
    std::size_t queries_used = 0;
    int rounds_used = 0;
    bool budget_limited = false;         // the budget trimmed the query plan
    bool used_sampler_fallback = false;  // degenerate sizing fell back
    bool eps_warning = false;            // eps below the stated validity range
    // effective sizing, for logs and reproduction
    double leading_constant = 0.0;       // c_s (sampler) or c (interval)
    double inclusion_probability = 0.0;  // per-position rate (interval)
    std::size_t interval_size = 0;       // m (interval)
};

// True iff every copy position was queried and the queried values realize pi.
bool witness_supported_by_transcript(const std::vector<QueryRecord>& transcript,
                                     const Permutation& pi, const PatternCopy& copy);

struct SamplerConfig {
    double leading_constant = 0.0;  // <= 0 selects the default 4k
};

// Queries ~ c_s * eps^{-1/k} * n^{1-1/k} uniform positions (without
// replacement) in one batch and rejects iff the queried subsequence contains
// a pi-copy. An oracle budget replaces the natural count; for a fixed seed
// the sample at a smaller budget is a prefix of the sample at a larger one.
Verdict sampler_test(QueryOracle& oracle, const Permutation& pi, double eps,
                     std::uint64_t seed, const SamplerConfig& cfg = {});

struct IntervalTestConfig {
    double c_constant = 0.0;  // <= 0 selects the default 100 k^2
};

// Partitions [n] into intervals of size m = (eps n)^{1-1/(k-1)} and runs both
// sub-procedures in a single non-adaptive batch: whole intervals plus
// singletons, each included with probability p = c m / (eps n), and an
// independent singleton pass at the same rate. A sub-procedure whose draw
// exceeds 100x its expected size contributes no queries. Rejects iff the
// union of queried positions contains a pi-copy. Requires k >= 3; degenerate
// interval sizing falls back to the sampler.
Verdict interval_test(QueryOracle& oracle, const Permutation& pi, double eps,
                      std::uint64_t seed, const IntervalTestConfig& cfg = {});

struct IntervalRef {
    int lo = 1;
    int hi = 0;
    int width() const { return hi - lo + 1; }
};

struct RoundSearchParams {
    double alpha = 0.0;  // membership threshold: in J iff f > alpha
    double a = 0.0;      // witness window (a, b)
    double b = 0.0;
    int rounds = 1;
    double gamma = 0.1;          // promised density of J in every subinterval
    std::size_t witnesses = 1;   // promised count of in-window entries
    std::uint64_t seed = 0;
    double round_constant = 8.0;  // scales the per-round sample count
    double final_constant = 8.0;  // scales the last-round sample count
};

struct RoundSearchOutcome {
    enum class Kind { Witness, ViolatingPair, NotFound };
    Kind kind = Kind::NotFound;
    int witness = 0;                // position with a < f(witness) < b
    int pair_low = 0, pair_high = 0;  // positions x < y, alpha < f(y) < f(x)
};

// Interval-narrowing search with r-1 narrowing rounds plus a final sampling
// round. Each narrowing round samples N = O((log(r+1)/gamma)(s/r)log(s/r))
// positions with s = n^{1/(r+1)}, keeps those above alpha, rejects on an
// in-window value or on a descent among the kept values, and otherwise
// recurses into the unique gap whose values could lie in (a, b). The final
// round samples O(|I_r| / witnesses) positions. Correct under the promise
// (dense J above alpha, near-monotone restriction, enough in-window
// witnesses); on arbitrary inputs it never fabricates an answer: every
// returned position was queried and its value checked.
RoundSearchOutcome round_limited_search(QueryOracle& oracle, IntervalRef interval,
                                        const RoundSearchParams& params);

}  // namespace permpat
