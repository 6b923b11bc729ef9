#pragma once

#include <cstdint>

#include "permpat/forge.hpp"
#include "permpat/oracle.hpp"

namespace permpat {

// Paired query access to the S and T arrays of a Template-Search instance.
// Both sides share one round clock and one budget: a round submits one batch
// to each array.
class TemplateOracle {
public:
    TemplateOracle(const TemplateSearchInstance& inst, AccessMode mode,
                   int rounds = 1, std::optional<std::size_t> budget = std::nullopt);

    int m() const { return m_; }
    std::optional<std::size_t> budget() const { return budget_; }
    std::size_t remaining_budget() const;

    struct RoundReply {
        std::vector<double> s_values;
        std::vector<double> t_values;
    };
    RoundReply query_round(const std::vector<int>& s_positions,
                           const std::vector<int>& t_positions);

    std::size_t queries_used() const;
    int rounds_used() const { return rounds_used_; }
    const std::vector<QueryRecord>& s_transcript() const { return s_log_; }
    const std::vector<QueryRecord>& t_transcript() const { return t_log_; }

private:
    std::vector<double> s_;
    std::vector<double> t_;
    int m_;
    AccessMode mode_;
    int round_limit_;
    std::optional<std::size_t> budget_;
    int rounds_used_ = 0;
    std::vector<QueryRecord> s_log_;
    std::vector<QueryRecord> t_log_;
};

// Exact offset recovery: queries T_1 and T_m, then binary-searches S for the
// boundary between the left padding and the template values. Adaptive; at
// most 2 + ceil(log2(2m+1)) queries.
int template_binary_search(TemplateOracle& oracle);

// Round-limited baseline: each round spends its share of the budget on
// evenly spaced S-probes inside the current candidate offset interval (plus
// matched T-probes), narrows the interval to the sub-cell consistent with
// the observed -1 / template / 2 classifications and exact value matches,
// and finally reports the midpoint. Exact whenever the final cell is a
// single offset; may otherwise return a wrong answer. The seed parameter is
// reserved for randomized strategies; this solver is deterministic.
int template_r_round_solver(TemplateOracle& oracle, int rounds, std::size_t budget,
                            std::uint64_t seed);

}  // namespace permpat
