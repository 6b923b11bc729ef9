#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "permpat/pattern.hpp"

namespace permpat {

// NonAdaptive: one batch of positions, submitted before any value is seen.
// Rounds: at most r batches; a batch may depend only on earlier batches.
// Adaptive: unbounded batches.
enum class AccessMode { NonAdaptive, Rounds, Adaptive };

struct QueryRecord {
    int round = 0;     // 1-based batch number
    int position = 0;  // 1-based
    double value = 0.0;
};

class OracleDisciplineError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Access wrapper around a hidden sequence. Records every query and enforces
// the batch discipline and the optional total query budget.
class QueryOracle {
public:
    QueryOracle(Sequence target, AccessMode mode, int rounds = 1,
                std::optional<std::size_t> budget = std::nullopt);

    std::size_t size() const { return target_.size(); }
    AccessMode mode() const { return mode_; }
    int round_limit() const { return round_limit_; }
    std::optional<std::size_t> budget() const { return budget_; }
    std::size_t remaining_budget() const {
        if (!budget_) return std::numeric_limits<std::size_t>::max();
        return *budget_ - transcript_.size();
    }

    // Answers one batch; throws OracleDisciplineError when the batch count or
    // budget would be exceeded, or a position is out of range.
    std::vector<double> query_batch(const std::vector<int>& positions);

    const std::vector<QueryRecord>& transcript() const { return transcript_; }
    std::size_t queries_used() const { return transcript_.size(); }
    int rounds_used() const { return rounds_used_; }

private:
    Sequence target_;
    AccessMode mode_;
    int round_limit_;
    std::optional<std::size_t> budget_;
    std::vector<QueryRecord> transcript_;
    int rounds_used_ = 0;
};

}  // namespace permpat
