#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "permpat/forge.hpp"
#include "permpat/template_search.hpp"

using namespace permpat;

TEST_CASE("binary search recovers the offset exactly") {
    // m = 1: all three offsets appear across seeds
    std::set<int> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = forge_template_search(1, seed);
        TemplateOracle oracle(inst, AccessMode::Adaptive);
        CHECK(template_binary_search(oracle) == inst.delta);
        seen.insert(inst.delta);
    }
    CHECK(seen == std::set<int>{0, 1, 2});

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int m = 300;
        const auto inst = forge_template_search(m, seed);
        TemplateOracle oracle(inst, AccessMode::Adaptive);
        CHECK(template_binary_search(oracle) == inst.delta);
        CHECK(oracle.queries_used() <=
              2 + 2 * static_cast<std::size_t>(
                          std::ceil(std::log2(3.0 * m))));
    }
}

TEST_CASE("binary search handles the no-padding edges") {
    TemplateSearchInstance inst;
    inst.T = {0.25, 0.5, 0.75};
    inst.delta = 0;
    inst.S = {0.25, 0.5, 0.75, 2, 2, 2, 2, 2, 2};
    TemplateOracle left(inst, AccessMode::Adaptive);
    CHECK(template_binary_search(left) == 0);

    inst.delta = 6;
    inst.S = {-1, -1, -1, -1, -1, -1, 0.25, 0.5, 0.75};
    TemplateOracle right(inst, AccessMode::Adaptive);
    CHECK(template_binary_search(right) == 6);
}

TEST_CASE("grid solver: enough rounds and budget degenerate to binary search") {
    for (int m : {5, 37, 200}) {
        const int rounds =
            static_cast<int>(std::ceil(std::log2(2.0 * m + 1.0)));
        const std::size_t budget = 4 * static_cast<std::size_t>(rounds);
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const auto inst = forge_template_search(m, seed);
            TemplateOracle oracle(inst, AccessMode::Rounds, rounds, budget);
            CHECK(template_r_round_solver(oracle, rounds, budget, seed) ==
                  inst.delta);
            CHECK(oracle.rounds_used() <= rounds);
        }
    }
}

TEST_CASE("grid solver: one round with budget >= 3m probes everything") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const int m = 40;
        const auto inst = forge_template_search(m, seed);
        TemplateOracle oracle(inst, AccessMode::Rounds, 1,
                              3 * static_cast<std::size_t>(m));
        CHECK(template_r_round_solver(oracle, 1,
                                      3 * static_cast<std::size_t>(m), seed) ==
              inst.delta);
        CHECK(oracle.rounds_used() == 1);
    }
}

TEST_CASE("grid solver respects the round discipline") {
    const auto inst = forge_template_search(1000, 5);
    TemplateOracle oracle(inst, AccessMode::Rounds, 3, 36);
    template_r_round_solver(oracle, 3, 36, 5);
    CHECK(oracle.rounds_used() <= 3);
    CHECK(oracle.queries_used() <= 36);
    int max_round = 0;
    for (const auto& rec : oracle.s_transcript())
        max_round = std::max(max_round, rec.round);
    CHECK(max_round <= 3);
}

TEST_CASE("paired oracle discipline") {
    const auto inst = forge_template_search(10, 1);
    TemplateOracle oracle(inst, AccessMode::Rounds, 1);
    oracle.query_round({1}, {1});
    CHECK_THROWS_AS(oracle.query_round({2}, {}), OracleDisciplineError);

    TemplateOracle capped(inst, AccessMode::Adaptive, 1, 3);
    capped.query_round({1, 2}, {});
    CHECK_THROWS_AS(capped.query_round({3, 4}, {}), OracleDisciplineError);
    CHECK(capped.remaining_budget() == 1);

    TemplateOracle bounds(inst, AccessMode::Adaptive);
    CHECK_THROWS_AS(bounds.query_round({31}, {}), OracleDisciplineError);
    CHECK_THROWS_AS(bounds.query_round({}, {11}), OracleDisciplineError);
}
