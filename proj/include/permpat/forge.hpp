#pragma once

#include <cstdint>

#include "permpat/partition.hpp"
#include "permpat/pattern.hpp"

namespace permpat {

// Parameters of a planted-copy hard instance: n must be divisible by k,
// eps*n must be a positive integer, and eps <= 1/(2k). P must be unique.
struct FarInstanceSpec {
    Permutation pi;
    SignedPartition P;
    std::size_t n = 0;
    double eps = 0.0;
    std::uint64_t seed = 0;
};

struct FarParams {
    std::size_t n = 0;
    double eps = 0.0;
    std::size_t planted = 0;  // eps * n
};

// Snaps (n, eps) to the nearest conforming pair instead of rounding silently.
FarParams snap_far_params(const Permutation& pi, std::size_t n, double eps);

// One member of the planted family: per partition block, eps*n stacked block
// copies at a seeded uniform offset inside the block's interval, ascending
// stacks under +, descending under -, padded with -1 below and n above (the
// padding order swaps under -). The output contains exactly eps*n pairwise
// disjoint copies of pi, all at integer value levels, and nothing else.
Sequence forge_far_instance(const FarInstanceSpec& spec);

// Strictly monotone control with seeded random increments: increasing unless
// pi is the ascending permutation, in which case decreasing. Rejects k = 1.
Sequence forge_free_instance(const Permutation& pi, std::size_t n, std::uint64_t seed);

struct TemplateSearchInstance {
    std::vector<double> T;  // m sorted values in (0,1), strictly increasing
    std::vector<double> S;  // (-1)^delta then T then (2)^(2m-delta)
    int delta = 0;          // ground truth, hidden behind oracle access

    int m() const { return static_cast<int>(T.size()); }
};

// T: m independent uniforms from (0,1), sorted (regenerated on a collision);
// delta uniform in {0..2m}.
TemplateSearchInstance forge_template_search(int m, std::uint64_t seed);

struct ReductionPair {
    Sequence f_yes;  // (1,3,2)-free
    Sequence f_no;   // exactly m pairwise-disjoint (1,3,2)-copies
    TemplateSearchInstance source;
};

// Length-5m pair built on the duplicated-template prefix followed by S. The
// pair at positions (2l-1, 2l) carries T_{m+1-l} split into (-delta, +delta);
// laying the pairs out in decreasing order keeps every cross-pair step a
// descent, so the only (1,3,2)-copies of f_no are the m disjoint triples
// (2l-1, 2l, tail entry of T_{m+1-l}). f_yes lifts the S entry carrying T_x
// by 2*delta_x, which removes those copies and flips exactly the m order
// relations (2(m+1-x), x+delta+2m), one per template element. delta_x is a
// quarter of the smaller adjacent gap (one-sided at the ends). Requires
// m >= 2 and distinct T values; small instances are re-verified at
// construction.
ReductionPair forge_reduction_pair(const TemplateSearchInstance& inst);

}  // namespace permpat
