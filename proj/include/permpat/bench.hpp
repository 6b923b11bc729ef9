#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace permpat {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(std::size_t successes, std::size_t trials);

// Geometric budget ladder with ratio 2^(1/4), deduplicated, within
// [q_min, q_max] inclusive (q_max always present).
std::vector<std::size_t> budget_ladder(std::size_t q_min, std::size_t q_max);

// One seeded trial at a budget; returns success. Trials are independent:
// implementations derive everything from mix_seed(base, point, trial).
using TrialRunner =
    std::function<bool(std::size_t point_index, std::size_t trial_index, std::size_t q)>;

struct PointEval {
    std::size_t q = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    WilsonInterval wilson;
    std::uint64_t wall_ms = 0;  // populated only when timings are requested
};

struct PointResult {
    std::size_t point_id = 0;
    std::size_t n_or_m = 0;
    std::vector<PointEval> evals;        // evaluated budgets, ascending
    std::optional<std::size_t> q_star;   // smallest ladder budget at target
    WilsonInterval q_star_wilson;
    bool skipped = false;                // family rejected this grid point
};

struct SweepResult {
    std::vector<PointResult> points;
};

// Binary search over the ladder for the smallest budget whose empirical
// success rate reaches `target`, with per-trial seeds fixed across budgets.
// Every evaluated budget is recorded. Returns q_star empty when even the
// largest ladder budget stays below target.
PointResult minimal_budget(const TrialRunner& runner, std::size_t point_id,
                           std::size_t n_or_m, std::size_t trials, double target,
                           const std::vector<std::size_t>& ladder,
                           bool record_timings = false);

struct ExponentFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
    std::size_t points_used = 0;
};

// Least squares of log q* against log n over the bracketed points.
// Requires at least 3 of them.
ExponentFit fit_exponent(const SweepResult& result);

struct SweepConfig {
    std::string pattern = "1,3,2";
    std::string family = "far";      // far | reduction | template
    std::string tester = "sampler";  // sampler | interval | grid
    std::vector<std::size_t> grid;   // n values (far), m values otherwise
    double eps = 0.1;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    double target = 2.0 / 3.0;
    int rounds = 1;  // template solver rounds
    std::string out_dir = ".";
    bool timings = false;
};

// Flat key-value config: `key = value` lines, '#' comments. Keys: pattern,
// family, tester, n_grid, eps, trials, seed, out_dir, target, rounds,
// timings.
SweepConfig parse_sweep_config(std::istream& in);

SweepResult run_sweep(const SweepConfig& cfg);

// CSV schema: point_id,n_or_m,q,trials,successes,wilson_lo,wilson_hi,wall_ms.
// Byte-identical across reruns of the same (config, seed) unless timings are
// enabled.
std::string sweep_csv(const SweepResult& result);

// JSON lines: one record per fitted exponent.
std::string sweep_summary_jsonl(const SweepConfig& cfg, const SweepResult& result);

std::string gnuplot_script(const std::string& csv_name);

// Worker cap: PERMPAT_THREADS, default hardware concurrency.
unsigned worker_count();

}  // namespace permpat
