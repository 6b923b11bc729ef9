#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "permpat/bench.hpp"
#include "permpat/oracle.hpp"
#include "permpat/rng.hpp"
#include "permpat/testers.hpp"

using namespace permpat;

TEST_CASE("wilson interval") {
    const auto empty = wilson95(0, 0);
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);

    const auto w = wilson95(150, 200);
    CHECK(w.lo == doctest::Approx(0.68566).epsilon(1e-3));
    CHECK(w.hi == doctest::Approx(0.80492).epsilon(1e-3));
    CHECK(w.lo < 0.75);
    CHECK(0.75 < w.hi);

    // doubling the trials at the same rate shrinks the interval
    const auto wide = wilson95(20, 30);
    const auto narrow = wilson95(40, 60);
    CHECK(narrow.hi - narrow.lo < wide.hi - wide.lo);
}

TEST_CASE("budget ladder") {
    const auto ladder = budget_ladder(1, 64);
    REQUIRE(!ladder.empty());
    CHECK(ladder.front() == 1);
    CHECK(ladder.back() == 64);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        CHECK(ladder[i] > ladder[i - 1]);
        CHECK(static_cast<double>(ladder[i]) <=
              std::ceil(static_cast<double>(ladder[i - 1]) * std::pow(2.0, 0.25)) + 1);
    }
    // resolution fine enough for exponent fits
    const auto fine = budget_ladder(2, 4096);
    for (std::size_t i = 1; i < fine.size(); ++i)
        CHECK(static_cast<double>(fine[i]) / static_cast<double>(fine[i - 1]) <= 1.5);
}

TEST_CASE("fit_exponent on an exact power law") {
    SweepResult result;
    for (int j = 3; j <= 8; ++j) {
        PointResult point;
        point.point_id = static_cast<std::size_t>(j);
        point.n_or_m = std::size_t{1} << (2 * j);  // n = 4^j
        point.q_star = std::size_t{1} << j;        // q* = 2^j = n^0.5
        result.points.push_back(point);
    }
    const auto fit = fit_exponent(result);
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.stderr_ < 1e-9);
    CHECK(fit.points_used == 6);

    SweepResult too_small;
    too_small.points.push_back(result.points[0]);
    CHECK_THROWS_AS(fit_exponent(too_small), std::invalid_argument);
}

TEST_CASE("minimal_budget finds the threshold on the ladder") {
    const auto ladder = budget_ladder(1, 64);
    TrialRunner runner = [](std::size_t, std::size_t, std::size_t q) {
        return q >= 37;
    };
    const auto point = minimal_budget(runner, 0, 100, 50, 2.0 / 3.0, ladder);
    REQUIRE(point.q_star.has_value());
    std::size_t expected = 0;
    for (std::size_t q : ladder)
        if (q >= 37) {
            expected = q;
            break;
        }
    CHECK(*point.q_star == expected);
    CHECK(point.q_star_wilson.lo > 0.9);  // 50/50 successes

    TrialRunner never = [](std::size_t, std::size_t, std::size_t) { return false; };
    const auto unbracketed = minimal_budget(never, 1, 100, 10, 2.0 / 3.0, ladder);
    CHECK_FALSE(unbracketed.q_star.has_value());
    CHECK(!unbracketed.evals.empty());
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "# comment\n"
        "pattern = 1,3,2\n"
        "family = far\n"
        "tester = interval\n"
        "n_grid = 1024,2048,4096\n"
        "eps = 0.1\n"
        "trials = 50\n"
        "seed = 9\n"
        "out_dir = /tmp/sweep\n");
    const auto cfg = parse_sweep_config(in);
    CHECK(cfg.pattern == "1,3,2");
    CHECK(cfg.tester == "interval");
    CHECK(cfg.grid == std::vector<std::size_t>{1024, 2048, 4096});
    CHECK(cfg.trials == 50);
    CHECK(cfg.seed == 9);
    CHECK(cfg.out_dir == "/tmp/sweep");

    std::istringstream bad("n_grid = 8\nbogus = 1\n");
    CHECK_THROWS_AS(parse_sweep_config(bad), std::invalid_argument);

    std::istringstream nongrid("pattern = 1,2\n");
    CHECK_THROWS_AS(parse_sweep_config(nongrid), std::invalid_argument);
}

TEST_CASE("sweeps are reproducible byte for byte") {
    SweepConfig cfg;
    cfg.pattern = "1,3,2";
    cfg.family = "far";
    cfg.tester = "sampler";
    cfg.grid = {120, 240};
    cfg.eps = 0.05;
    cfg.trials = 24;
    cfg.seed = 31;
    const auto a = run_sweep(cfg);
    const auto b = run_sweep(cfg);
    CHECK(sweep_csv(a) == sweep_csv(b));
    CHECK(sweep_summary_jsonl(cfg, a) == sweep_summary_jsonl(cfg, b));
    CHECK(sweep_csv(a).rfind("point_id,n_or_m,q,trials,successes,wilson_lo,"
                             "wilson_hi,wall_ms\n",
                             0) == 0);
    for (const auto& point : a.points) {
        CHECK_FALSE(point.skipped);
        // success counts never decrease along the evaluated budgets
        for (std::size_t i = 1; i < point.evals.size(); ++i)
            CHECK(point.evals[i].successes >= point.evals[i - 1].successes);
    }
}

TEST_CASE("sampler success is non-decreasing in the budget (coupled trials)") {
    SweepConfig cfg;
    cfg.grid = {90};
    cfg.eps = 1.0 / 15.0;
    cfg.trials = 30;
    cfg.seed = 77;
    const auto result = run_sweep(cfg);
    REQUIRE(result.points.size() == 1);
    REQUIRE(result.points[0].q_star.has_value());
}

TEST_CASE("template family sweep") {
    SweepConfig cfg;
    cfg.family = "template";
    cfg.tester = "grid";
    cfg.rounds = 6;
    cfg.grid = {16, 32};
    cfg.trials = 20;
    cfg.seed = 5;
    const auto result = run_sweep(cfg);
    for (const auto& point : result.points) CHECK(point.q_star.has_value());
}

TEST_CASE("minimal budget on a fixed three-entry copy is 3") {
    // the whole sequence is the pattern: only a full sample can reject
    TrialRunner runner = [](std::size_t, std::size_t trial, std::size_t q) {
        QueryOracle oracle({1, 3, 2}, AccessMode::NonAdaptive, 1, q);
        return sampler_test(oracle, Permutation({1, 3, 2}), 0.3,
                            mix_seed(4, trial))
            .reject;
    };
    const auto point = minimal_budget(runner, 0, 3, 40, 2.0 / 3.0,
                                      budget_ladder(1, 3));
    REQUIRE(point.q_star.has_value());
    CHECK(*point.q_star == 3);
}

TEST_CASE("interval tester needs no more budget than the sampler") {
    SweepConfig cfg;
    cfg.grid = {1 << 14};
    cfg.eps = 0.05;
    cfg.trials = 48;
    cfg.seed = 11;
    cfg.tester = "sampler";
    const auto sampler_point = run_sweep(cfg).points.at(0);
    cfg.tester = "interval";
    const auto interval_point = run_sweep(cfg).points.at(0);
    REQUIRE(sampler_point.q_star.has_value());
    REQUIRE(interval_point.q_star.has_value());
    CHECK(*interval_point.q_star <= *sampler_point.q_star);
}
