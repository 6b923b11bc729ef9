#pragma once

#include <optional>
#include <vector>

#include "permpat/pattern.hpp"

namespace permpat {

struct DistanceReport {
    std::size_t lower = 0;  // disjoint-packing size
    std::size_t upper = 0;  // k x maximal-packing size
    std::optional<std::size_t> exact;
};

// lower = greedy disjoint packing (each copy forces one deletion), upper =
// k x packing (deleting a maximal packing kills every copy). exact is filled
// for pi-free inputs and whenever n <= exact_threshold.
DistanceReport distance_bounds(const Sequence& f, const Permutation& pi,
                               std::size_t exact_threshold = 30);

struct ExactDistanceResult {
    bool budget_exceeded = false;
    std::size_t value = 0;          // meaningful only when !budget_exceeded
    std::vector<int> deletions;     // witness positions, ascending
};

// Minimum number of entry deletions making f pi-free (equals the Hamming
// distance to pi-freeness). Branch and bound on a minimum hitting set over
// copies: find one copy, branch on deleting each of its entries, prune with
// the greedy-packing lower bound. Intended for n <= 40; hard-capped at 64.
// With a budget, distances above it are reported as budget_exceeded rather
// than approximated.
ExactDistanceResult deletion_distance_exact(
    const Sequence& f, const Permutation& pi,
    std::optional<std::size_t> budget = std::nullopt);

// Turns a deletion set into value modifications: while S is non-empty, pick
// the smallest x in S with a neighbor y outside S (preferring the left
// neighbor), set f(x) = f(y) and drop x. If deleting S makes f pi-free, the
// result is pi-free. S must leave at least one entry.
Sequence deletion_set_to_modifications(const Sequence& f, const std::vector<int>& S);

}  // namespace permpat
