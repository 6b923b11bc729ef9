#include "permpat/testers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "permpat/rng.hpp"

namespace permpat {

bool witness_supported_by_transcript(const std::vector<QueryRecord>& transcript,
                                     const Permutation& pi, const PatternCopy& copy) {
    std::map<int, double> seen;
    for (const auto& record : transcript) seen.emplace(record.position, record.value);
    Sequence values;
    int prev = 0;
    for (int pos : copy.indices) {
        if (pos <= prev) return false;
        prev = pos;
        auto it = seen.find(pos);
        if (it == seen.end()) return false;
        values.push_back(it->second);
    }
    Sequence pattern;
    for (int v : pi.values()) pattern.push_back(v);
    return order_isomorphic(values, pattern);
}

namespace {

// First `count` entries of a seeded uniform permutation of [1..n]; for a
// fixed seed the result at a smaller count is a prefix of the result at a
// larger one.
std::vector<int> sample_without_replacement(std::size_t n, std::size_t count,
                                            Rng& rng) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i) + 1;
    count = std::min(count, n);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

Verdict finish_with_lookup(QueryOracle& oracle, const Permutation& pi,
                           const std::vector<int>& positions,
                           const std::vector<double>& values, Verdict verdict) {
    const auto hit = find_any_copy(values, pi);
    verdict.queries_used = oracle.queries_used();
    verdict.rounds_used = oracle.rounds_used();
    if (hit) {
        PatternCopy mapped;
        for (int idx : hit->indices)
            mapped.indices.push_back(positions[static_cast<std::size_t>(idx) - 1]);
        if (!witness_supported_by_transcript(oracle.transcript(), pi, mapped))
            throw std::logic_error("tester produced an unsupported witness");
        verdict.reject = true;
        verdict.witness = std::move(mapped);
    }
    return verdict;
}

}  // namespace

Verdict sampler_test(QueryOracle& oracle, const Permutation& pi, double eps,
                     std::uint64_t seed, const SamplerConfig& cfg) {
    if (oracle.mode() != AccessMode::NonAdaptive)
        throw std::invalid_argument("sampler_test requires a non-adaptive oracle");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eps must lie in (0, 1]");
    const std::size_t n = oracle.size();
    const int k = pi.size();
    Verdict verdict;
    if (n == 0) return verdict;

    const double cs = cfg.leading_constant > 0 ? cfg.leading_constant : 4.0 * k;
    verdict.leading_constant = cs;
    const double raw = cs * std::pow(eps, -1.0 / k) *
                       std::pow(static_cast<double>(n), 1.0 - 1.0 / k);
    std::size_t target = static_cast<std::size_t>(std::ceil(raw));
    if (oracle.budget() && *oracle.budget() < target) {
        target = *oracle.budget();
        verdict.budget_limited = true;
    }
    target = std::min(target, n);

    Rng rng(mix_seed(seed, 1));
    std::vector<int> positions = sample_without_replacement(n, target, rng);
    std::sort(positions.begin(), positions.end());
    const auto values = oracle.query_batch(positions);
    return finish_with_lookup(oracle, pi, positions, values, verdict);
}

Verdict interval_test(QueryOracle& oracle, const Permutation& pi, double eps,
                      std::uint64_t seed, const IntervalTestConfig& cfg) {
    if (oracle.mode() != AccessMode::NonAdaptive)
        throw std::invalid_argument("interval_test requires a non-adaptive oracle");
    const int k = pi.size();
    if (k < 3) throw std::invalid_argument("interval_test requires k >= 3");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eps must lie in (0, 1]");
    const std::size_t n = oracle.size();
    Verdict verdict;
    if (n == 0) return verdict;

    const double en = eps * static_cast<double>(n);
    const double m_raw = std::ceil(std::pow(en, 1.0 - 1.0 / (k - 1)));
    if (!(m_raw >= 1.0) || m_raw > static_cast<double>(n)) {
        Verdict fallback = sampler_test(oracle, pi, eps, seed);
        fallback.used_sampler_fallback = true;
        return fallback;
    }
    const std::size_t m = static_cast<std::size_t>(m_raw);
    const std::size_t interval_count = (n + m - 1) / m;
    const double c = cfg.c_constant > 0 ? cfg.c_constant : 100.0 * k * k;
    verdict.eps_warning = eps < std::pow(static_cast<double>(n), -1.0 / 9.0);

    double p;
    if (oracle.budget()) {
        p = std::min(1.0, static_cast<double>(*oracle.budget()) / (3.0 * n));
    } else {
        p = std::min(1.0, c * static_cast<double>(m) / en);
    }
    verdict.leading_constant = c;
    verdict.inclusion_probability = p;
    verdict.interval_size = m;

    // Independent per-interval and per-position coins, drawn in a fixed order
    // so a larger budget keeps every inclusion of a smaller one.
    Rng rng_intervals(mix_seed(seed, 1));
    Rng rng_singles(mix_seed(seed, 2));
    Rng rng_uniform(mix_seed(seed, 3));
    std::vector<std::size_t> chosen_intervals;
    for (std::size_t i = 0; i < interval_count; ++i)
        if (rng_intervals.coin(p)) chosen_intervals.push_back(i);
    std::vector<int> case1_singles;
    for (std::size_t pos = 1; pos <= n; ++pos)
        if (rng_singles.coin(p)) case1_singles.push_back(static_cast<int>(pos));
    std::vector<int> case2_singles;
    for (std::size_t pos = 1; pos <= n; ++pos)
        if (rng_uniform.coin(p)) case2_singles.push_back(static_cast<int>(pos));

    // A draw more than 100x its expectation aborts its sub-procedure.
    const double cap_intervals = 100.0 * static_cast<double>(interval_count) * p;
    const double cap_singles = 100.0 * static_cast<double>(n) * p;
    const bool case1_ok =
        static_cast<double>(chosen_intervals.size()) <= cap_intervals &&
        static_cast<double>(case1_singles.size()) <= cap_singles;
    const bool case2_ok = static_cast<double>(case2_singles.size()) <= cap_singles;

    std::vector<int> positions;
    if (case1_ok) {
        for (std::size_t i : chosen_intervals) {
            const std::size_t lo = i * m + 1;
            const std::size_t hi = std::min(n, (i + 1) * m);
            for (std::size_t pos = lo; pos <= hi; ++pos)
                positions.push_back(static_cast<int>(pos));
        }
        positions.insert(positions.end(), case1_singles.begin(), case1_singles.end());
    }
    if (case2_ok)
        positions.insert(positions.end(), case2_singles.begin(), case2_singles.end());
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    if (oracle.budget() && positions.size() > *oracle.budget()) {
        positions.resize(*oracle.budget());
        verdict.budget_limited = true;
    }

    const auto values = oracle.query_batch(positions);
    return finish_with_lookup(oracle, pi, positions, values, verdict);
}

RoundSearchOutcome round_limited_search(QueryOracle& oracle, IntervalRef interval,
                                        const RoundSearchParams& params) {
    if (oracle.mode() != AccessMode::Rounds ||
        oracle.round_limit() < params.rounds)
        throw std::invalid_argument(
            "round_limited_search needs a round-limited oracle with enough rounds");
    if (params.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (!(params.alpha < params.a && params.a < params.b))
        throw std::invalid_argument("need alpha < a < b");
    if (!(params.gamma > 0.0) || params.witnesses < 1)
        throw std::invalid_argument("bad gamma or witness count");
    const int n = static_cast<int>(oracle.size());
    if (interval.lo < 1 || interval.hi > n || interval.lo > interval.hi)
        throw std::invalid_argument("interval out of range");

    const int r = params.rounds;
    const double s = std::pow(static_cast<double>(n), 1.0 / (r + 1));
    const double per_round =
        params.round_constant * (std::log2(static_cast<double>(r) + 1.0) / params.gamma) *
        (s / r) * std::log2(std::max(s / r, 2.0));
    const std::size_t narrow_samples =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(per_round)));

    Rng rng(mix_seed(params.seed, 0xd1ce));
    IntervalRef current = interval;
    RoundSearchOutcome outcome;

    auto sample_batch = [&](std::size_t count) {
        std::vector<int> positions;
        positions.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            positions.push_back(current.lo +
                                static_cast<int>(rng.below(
                                    static_cast<std::uint64_t>(current.width()))));
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()),
                        positions.end());
        if (positions.size() > oracle.remaining_budget())
            positions.resize(oracle.remaining_budget());
        return positions;
    };

    for (int round = 1; round <= r - 1; ++round) {
        const auto positions = sample_batch(narrow_samples);
        if (positions.empty()) return outcome;  // budget exhausted
        const auto values = oracle.query_batch(positions);
        std::vector<std::pair<int, double>> kept;  // positions above alpha
        for (std::size_t i = 0; i < positions.size(); ++i)
            if (values[i] > params.alpha) kept.emplace_back(positions[i], values[i]);
        if (kept.empty()) return outcome;
        for (const auto& [pos, v] : kept)
            if (params.a < v && v < params.b) {
                outcome.kind = RoundSearchOutcome::Kind::Witness;
                outcome.witness = pos;
                return outcome;
            }
        for (std::size_t i = 1; i < kept.size(); ++i)
            if (kept[i - 1].second > kept[i].second) {
                outcome.kind = RoundSearchOutcome::Kind::ViolatingPair;
                outcome.pair_low = kept[i - 1].first;
                outcome.pair_high = kept[i].first;
                return outcome;
            }
        // Values are now non-decreasing with nothing inside (a, b): the
        // witnesses can only sit between the last value below the window and
        // the first value above it.
        int next_lo = current.lo, next_hi = current.hi;
        for (const auto& [pos, v] : kept) {
            if (v <= params.a) next_lo = std::max(next_lo, pos + 1);
            if (v >= params.b) {
                next_hi = std::min(next_hi, pos - 1);
                break;
            }
        }
        if (next_lo > next_hi) return outcome;
        current = {next_lo, next_hi};
    }

    const std::size_t final_samples = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(
               params.final_constant * current.width() /
               static_cast<double>(params.witnesses))));
    const auto positions = sample_batch(final_samples);
    if (positions.empty()) return outcome;
    const auto values = oracle.query_batch(positions);
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (params.a < values[i] && values[i] < params.b) {
            outcome.kind = RoundSearchOutcome::Kind::Witness;
            outcome.witness = positions[i];
            return outcome;
        }
    return outcome;
}

}  // namespace permpat
