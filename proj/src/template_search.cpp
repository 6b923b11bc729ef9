#include "permpat/template_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permpat {

TemplateOracle::TemplateOracle(const TemplateSearchInstance& inst, AccessMode mode,
                               int rounds, std::optional<std::size_t> budget)
    : s_(inst.S), t_(inst.T), m_(inst.m()), mode_(mode), budget_(budget) {
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

std::size_t TemplateOracle::queries_used() const {
    return s_log_.size() + t_log_.size();
}

std::size_t TemplateOracle::remaining_budget() const {
    if (!budget_) return std::numeric_limits<std::size_t>::max();
    return *budget_ - queries_used();
}

TemplateOracle::RoundReply TemplateOracle::query_round(
    const std::vector<int>& s_positions, const std::vector<int>& t_positions) {
    if (rounds_used_ >= round_limit_)
        throw OracleDisciplineError("batch limit exceeded");
    if (budget_ &&
        queries_used() + s_positions.size() + t_positions.size() > *budget_)
        throw OracleDisciplineError("query budget exceeded");
    for (int p : s_positions)
        if (p < 1 || p > static_cast<int>(s_.size()))
            throw OracleDisciplineError("S position out of range");
    for (int p : t_positions)
        if (p < 1 || p > static_cast<int>(t_.size()))
            throw OracleDisciplineError("T position out of range");
    ++rounds_used_;
    RoundReply reply;
    for (int p : s_positions) {
        const double v = s_[static_cast<std::size_t>(p) - 1];
        s_log_.push_back({rounds_used_, p, v});
        reply.s_values.push_back(v);
    }
    for (int p : t_positions) {
        const double v = t_[static_cast<std::size_t>(p) - 1];
        t_log_.push_back({rounds_used_, p, v});
        reply.t_values.push_back(v);
    }
    return reply;
}

int template_binary_search(TemplateOracle& oracle) {
    const int m = oracle.m();
    const auto ends = oracle.query_round({}, {1, m});
    const double t_first = ends.t_values[0];
    // S_i < T_1 holds exactly on the left padding, i.e. for i <= delta.
    int lo = 0, hi = 2 * m;
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        const auto reply = oracle.query_round({mid}, {});
        if (reply.s_values[0] < t_first)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

int template_r_round_solver(TemplateOracle& oracle, int rounds, std::size_t budget,
                            std::uint64_t seed) {
    (void)seed;
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    const int m = oracle.m();
    int lo = 0, hi = 2 * m;
    std::size_t used = 0;
    for (int round = 1; round <= rounds && lo < hi; ++round) {
        if (used >= budget) break;
        const std::size_t round_budget = std::max<std::size_t>(
            1, (budget - used) / static_cast<std::size_t>(rounds - round + 1));
        const int width = hi - lo;
        std::vector<int> s_probes;
        std::vector<int> t_probes;
        if (static_cast<std::size_t>(width) <= round_budget) {
            for (int pos = lo + 1; pos <= hi; ++pos) s_probes.push_back(pos);
            const std::size_t leftover = round_budget - static_cast<std::size_t>(width);
            const int g_t = static_cast<int>(
                std::min<std::size_t>(leftover, static_cast<std::size_t>(m)));
            for (int j = 1; j <= g_t; ++j)
                t_probes.push_back(static_cast<int>(
                    static_cast<long long>(j) * m / (g_t + 1) + 1));
        } else {
            const std::size_t g_s = (round_budget + 1) / 2;
            const std::size_t g_t =
                std::min<std::size_t>(round_budget - g_s, static_cast<std::size_t>(m));
            for (std::size_t j = 1; j <= g_s; ++j)
                s_probes.push_back(lo + static_cast<int>(static_cast<unsigned long long>(j) *
                                                         static_cast<unsigned long long>(width) /
                                                         (g_s + 1)) +
                                   1);
            for (std::size_t j = 1; j <= g_t; ++j)
                t_probes.push_back(static_cast<int>(
                    static_cast<unsigned long long>(j) * static_cast<unsigned long long>(m) /
                        (g_t + 1) +
                    1));
        }
        for (auto* probes : {&s_probes, &t_probes}) {
            std::sort(probes->begin(), probes->end());
            probes->erase(std::unique(probes->begin(), probes->end()), probes->end());
        }
        const auto reply = oracle.query_round(s_probes, t_probes);
        used += s_probes.size() + t_probes.size();
        for (std::size_t i = 0; i < s_probes.size(); ++i) {
            const int pos = s_probes[i];
            const double v = reply.s_values[i];
            if (v < 0.0) {
                lo = std::max(lo, pos);
            } else if (v > 1.0) {
                hi = std::min(hi, pos - m - 1);
            } else {
                lo = std::max(lo, pos - m);
                hi = std::min(hi, pos - 1);
                for (std::size_t j = 0; j < t_probes.size(); ++j)
                    if (reply.t_values[j] == v) {
                        lo = hi = pos - t_probes[j];
                        break;
                    }
            }
        }
        if (lo > hi) hi = lo;  // inconsistent observations; keep a guess
    }
    return lo == hi ? lo : lo + (hi - lo) / 2;
}

}  // namespace permpat
