#include "permpat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permpat/forge.hpp"
#include "permpat/oracle.hpp"
#include "permpat/partition.hpp"
#include "permpat/rng.hpp"
#include "permpat/template_search.hpp"
#include "permpat/testers.hpp"

namespace permpat {

WilsonInterval wilson95(std::size_t successes, std::size_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {(center - margin) / denom, (center + margin) / denom};
}

std::vector<std::size_t> budget_ladder(std::size_t q_min, std::size_t q_max) {
    if (q_min < 1 || q_min > q_max) throw std::invalid_argument("bad ladder bounds");
    std::vector<std::size_t> out;
    const double ratio = std::pow(2.0, 0.25);
    double q = static_cast<double>(q_min);
    while (true) {
        const std::size_t rounded = static_cast<std::size_t>(std::ceil(q));
        if (rounded >= q_max) break;
        if (out.empty() || rounded > out.back()) out.push_back(rounded);
        q *= ratio;
    }
    out.push_back(q_max);
    return out;
}

unsigned worker_count() {
    if (const char* env = std::getenv("PERMPAT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

std::size_t count_successes(const TrialRunner& runner, std::size_t point,
                            std::size_t trials, std::size_t q) {
    const unsigned workers = std::min<unsigned>(
        worker_count(), static_cast<unsigned>(std::max<std::size_t>(trials, 1)));
    if (workers <= 1) {
        std::size_t successes = 0;
        for (std::size_t t = 0; t < trials; ++t)
            if (runner(point, t, q)) ++successes;
        return successes;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> successes{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= trials) return;
                    if (runner(point, t, q)) successes.fetch_add(1);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(trials);
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return successes.load();
}

}  // namespace

PointResult minimal_budget(const TrialRunner& runner, std::size_t point_id,
                           std::size_t n_or_m, std::size_t trials, double target,
                           const std::vector<std::size_t>& ladder,
                           bool record_timings) {
    PointResult result;
    result.point_id = point_id;
    result.n_or_m = n_or_m;
    std::vector<std::optional<PointEval>> cache(ladder.size());
    auto evaluate = [&](std::size_t index) -> const PointEval& {
        if (!cache[index]) {
            const auto start = std::chrono::steady_clock::now();
            PointEval eval;
            eval.q = ladder[index];
            eval.trials = trials;
            eval.successes = count_successes(runner, point_id, trials, ladder[index]);
            eval.wilson = wilson95(eval.successes, trials);
            if (record_timings)
                eval.wall_ms = static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count());
            cache[index] = eval;
        }
        return *cache[index];
    };
    auto reaches = [&](std::size_t index) {
        const auto& eval = evaluate(index);
        return static_cast<double>(eval.successes) >=
               target * static_cast<double>(eval.trials);
    };

    if (reaches(ladder.size() - 1)) {
        std::size_t lo = 0, hi = ladder.size() - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (reaches(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        result.q_star = ladder[lo];
        result.q_star_wilson = evaluate(lo).wilson;
    }
    for (const auto& eval : cache)
        if (eval) result.evals.push_back(*eval);
    std::sort(result.evals.begin(), result.evals.end(),
              [](const PointEval& a, const PointEval& b) { return a.q < b.q; });
    return result;
}

ExponentFit fit_exponent(const SweepResult& result) {
    std::vector<double> xs, ys;
    for (const auto& point : result.points)
        if (!point.skipped && point.q_star) {
            xs.push_back(std::log(static_cast<double>(point.n_or_m)));
            ys.push_back(std::log(static_cast<double>(*point.q_star)));
        }
    if (xs.size() < 3)
        throw std::invalid_argument("fit_exponent needs >= 3 bracketed points");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate grid");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += resid * resid;
    }
    fit.stderr_ = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
    fit.points_used = n;
    return fit;
}

namespace {

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        out.push_back(static_cast<std::size_t>(std::stoull(token)));
    if (out.empty()) throw std::invalid_argument("empty grid");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw std::invalid_argument("grid must be strictly increasing");
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    cfg.grid.clear();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "pattern")
            cfg.pattern = value;
        else if (key == "family")
            cfg.family = value;
        else if (key == "tester")
            cfg.tester = value;
        else if (key == "n_grid")
            cfg.grid = parse_grid(value);
        else if (key == "eps")
            cfg.eps = std::stod(value);
        else if (key == "trials")
            cfg.trials = std::stoull(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "out_dir")
            cfg.out_dir = value;
        else if (key == "target")
            cfg.target = std::stod(value);
        else if (key == "rounds")
            cfg.rounds = std::stoi(value);
        else if (key == "timings")
            cfg.timings = value == "1" || value == "true";
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key " + key);
    }
    if (cfg.grid.empty()) throw std::invalid_argument("config needs n_grid");
    return cfg;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    const Permutation pi = Permutation::parse(cfg.pattern);
    SweepResult result;
    if (cfg.family == "far") {
        const SignedPartition witness = uspn(pi).witness;
        for (std::size_t idx = 0; idx < cfg.grid.size(); ++idx) {
            PointResult point;
            point.point_id = idx;
            point.n_or_m = cfg.grid[idx];
            FarParams params;
            try {
                params = snap_far_params(pi, cfg.grid[idx], cfg.eps);
            } catch (const std::exception&) {
                point.skipped = true;
                result.points.push_back(std::move(point));
                continue;
            }
            TrialRunner runner = [&, params](std::size_t p, std::size_t t,
                                             std::size_t q) {
                const std::uint64_t trial_seed = mix_seed(cfg.seed, p, t);
                FarInstanceSpec spec{pi, witness, params.n, params.eps, trial_seed};
                QueryOracle oracle(forge_far_instance(spec), AccessMode::NonAdaptive,
                                   1, q);
                const std::uint64_t tester_seed = mix_seed(cfg.seed, p, t, 1);
                const Verdict verdict =
                    cfg.tester == "interval"
                        ? interval_test(oracle, pi, params.eps, tester_seed)
                        : sampler_test(oracle, pi, params.eps, tester_seed);
                return verdict.reject;
            };
            point = minimal_budget(runner, idx, cfg.grid[idx], cfg.trials, cfg.target,
                                   budget_ladder(2, params.n), cfg.timings);
            result.points.push_back(std::move(point));
        }
    } else if (cfg.family == "reduction") {
        const Permutation p132({1, 3, 2});
        for (std::size_t idx = 0; idx < cfg.grid.size(); ++idx) {
            const std::size_t m = cfg.grid[idx];
            TrialRunner runner = [&, m](std::size_t p, std::size_t t, std::size_t q) {
                const std::uint64_t trial_seed = mix_seed(cfg.seed, p, t);
                const auto pair = forge_reduction_pair(
                    forge_template_search(static_cast<int>(m), trial_seed));
                QueryOracle oracle(pair.f_no, AccessMode::NonAdaptive, 1, q);
                const std::uint64_t tester_seed = mix_seed(cfg.seed, p, t, 1);
                const Verdict verdict =
                    cfg.tester == "interval"
                        ? interval_test(oracle, p132, 0.2, tester_seed)
                        : sampler_test(oracle, p132, 0.2, tester_seed);
                return verdict.reject;
            };
            result.points.push_back(minimal_budget(runner, idx, m, cfg.trials,
                                                   cfg.target, budget_ladder(2, 5 * m),
                                                   cfg.timings));
        }
    } else if (cfg.family == "template") {
        for (std::size_t idx = 0; idx < cfg.grid.size(); ++idx) {
            const std::size_t m = cfg.grid[idx];
            TrialRunner runner = [&, m](std::size_t p, std::size_t t, std::size_t q) {
                const std::uint64_t trial_seed = mix_seed(cfg.seed, p, t);
                const auto inst = forge_template_search(static_cast<int>(m), trial_seed);
                TemplateOracle oracle(inst, AccessMode::Rounds, cfg.rounds, q);
                const int answer = template_r_round_solver(
                    oracle, cfg.rounds, q, mix_seed(cfg.seed, p, t, 1));
                return answer == inst.delta;
            };
            result.points.push_back(minimal_budget(runner, idx, m, cfg.trials,
                                                   cfg.target, budget_ladder(2, 4 * m),
                                                   cfg.timings));
        }
    } else {
        throw std::invalid_argument("unknown family: " + cfg.family);
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "point_id,n_or_m,q,trials,successes,wilson_lo,wilson_hi,wall_ms\n";
    char buf[160];
    for (const auto& point : result.points)
        for (const auto& eval : point.evals) {
            std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%zu,%.6f,%.6f,%llu\n",
                          point.point_id, point.n_or_m, eval.q, eval.trials,
                          eval.successes, eval.wilson.lo, eval.wilson.hi,
                          static_cast<unsigned long long>(eval.wall_ms));
            out += buf;
        }
    return out;
}

std::string sweep_summary_jsonl(const SweepConfig& cfg, const SweepResult& result) {
    std::string out;
    char buf[360];
    for (const auto& point : result.points) {
        if (point.skipped) {
            std::snprintf(buf, sizeof buf,
                          "{\"point_id\":%zu,\"n_or_m\":%zu,\"skipped\":true}\n",
                          point.point_id, point.n_or_m);
            out += buf;
            continue;
        }
        if (point.q_star)
            std::snprintf(buf, sizeof buf,
                          "{\"point_id\":%zu,\"n_or_m\":%zu,\"q_star\":%zu,"
                          "\"wilson_lo\":%.6f,\"wilson_hi\":%.6f}\n",
                          point.point_id, point.n_or_m, *point.q_star,
                          point.q_star_wilson.lo, point.q_star_wilson.hi);
        else
            std::snprintf(buf, sizeof buf,
                          "{\"point_id\":%zu,\"n_or_m\":%zu,\"q_star\":null}\n",
                          point.point_id, point.n_or_m);
        out += buf;
    }
    try {
        const ExponentFit fit = fit_exponent(result);
        std::snprintf(buf, sizeof buf,
                      "{\"fit\":{\"tester\":\"%s\",\"family\":\"%s\",\"slope\":%.6f,"
                      "\"stderr\":%.6f,\"points_used\":%zu}}\n",
                      cfg.tester.c_str(), cfg.family.c_str(), fit.slope, fit.stderr_,
                      fit.points_used);
        out += buf;
    } catch (const std::exception&) {
        // fewer than 3 bracketed points: no fit record
    }
    return out;
}

std::string gnuplot_script(const std::string& csv_name) {
    std::string out;
    out += "set datafile separator ','\n";
    out += "set logscale xy\n";
    out += "set xlabel 'n'\n";
    out += "set ylabel 'q'\n";
    out += "plot '" + csv_name + "' every ::1 using 2:3 with points title 'evaluated budgets'\n";
    return out;
}

}  // namespace permpat
