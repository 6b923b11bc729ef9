#include "permpat/oracle.hpp"

#include <stdexcept>
#include <string>

namespace permpat {

QueryOracle::QueryOracle(Sequence target, AccessMode mode, int rounds,
                         std::optional<std::size_t> budget)
    : target_(std::move(target)), mode_(mode), budget_(budget) {
    switch (mode_) {
        case AccessMode::NonAdaptive:
            round_limit_ = 1;
            break;
        case AccessMode::Rounds:
            if (rounds < 1)
                throw std::invalid_argument("round-limited oracle needs rounds >= 1");
            round_limit_ = rounds;
            break;
        case AccessMode::Adaptive:
            round_limit_ = std::numeric_limits<int>::max();
            break;
    }
}

std::vector<double> QueryOracle::query_batch(const std::vector<int>& positions) {
    if (rounds_used_ >= round_limit_)
        throw OracleDisciplineError("batch limit exceeded (round " +
                                    std::to_string(rounds_used_ + 1) + " of " +
                                    std::to_string(round_limit_) + ")");
    if (budget_ && transcript_.size() + positions.size() > *budget_)
        throw OracleDisciplineError("query budget exceeded");
    for (int p : positions)
        if (p < 1 || p > static_cast<int>(target_.size()))
            throw OracleDisciplineError("query position out of range");
    ++rounds_used_;
    std::vector<double> values;
    values.reserve(positions.size());
    for (int p : positions) {
        const double v = target_[static_cast<std::size_t>(p) - 1];
        transcript_.push_back({rounds_used_, p, v});
        values.push_back(v);
    }
    return values;
}

}  // namespace permpat
