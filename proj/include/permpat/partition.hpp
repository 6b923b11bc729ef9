#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permpat/pattern.hpp"

namespace permpat {

// Consecutive block pi[lo, hi] of pattern positions, 1-based inclusive.
struct ConsecutiveBlock {
    int lo = 0;
    int hi = 0;

    int length() const { return hi - lo + 1; }
    bool overlaps(const ConsecutiveBlock& other) const {
        return lo <= other.hi && other.lo <= hi;
    }
    friend bool operator==(const ConsecutiveBlock& a, const ConsecutiveBlock& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator<(const ConsecutiveBlock& a, const ConsecutiveBlock& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    }
};

// Ordered consecutive blocks covering [k] contiguously.
class Partition {
public:
    Partition(int k, std::vector<ConsecutiveBlock> blocks);

    // Builds the blocks from part sizes (k1, ..., kl) summing to k.
    static Partition from_sizes(const std::vector<int>& sizes);

    int k() const { return k_; }
    int size() const { return static_cast<int>(blocks_.size()); }
    const std::vector<ConsecutiveBlock>& blocks() const { return blocks_; }

private:
    int k_;
    std::vector<ConsecutiveBlock> blocks_;
};

enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// - if min of the block appears before max within pi, + otherwise.
// Rejects singleton blocks, whose sign is unconstrained.
Sign forced_sign(const Permutation& pi, const ConsecutiveBlock& block);

// Partition plus a sign per block; signs of blocks longer than one entry must
// equal their forced sign (validated on construction).
class SignedPartition {
public:
    SignedPartition(const Permutation& pi, Partition partition,
                    std::vector<Sign> signs);

    const Partition& partition() const { return partition_; }
    const std::vector<Sign>& signs() const { return signs_; }
    int size() const { return partition_.size(); }

private:
    Partition partition_;
    std::vector<Sign> signs_;
};

// All sign assignments admissible for the partition: forced on long blocks,
// both choices on singletons. Ordered with + before - per singleton.
std::vector<SignedPartition> admissible_signed_partitions(const Permutation& pi,
                                                          const Partition& partition);

// The length-k^2 blowup f_P: block b spans positions r_{b-1}k+1 .. r_b k and
// carries k stacked block-copies, ascending stacks for +, descending for -.
Sequence blowup_sequence(const Permutation& pi, const SignedPartition& P);

// The k trivial copies of the blowup: for each level m, the positions whose
// value lies in (m, m+1), ascending.
std::vector<PatternCopy> blowup_trivial_copies(const Permutation& pi,
                                               const SignedPartition& P);

// True iff every pi-copy in blowup_sequence(pi, P) is trivial. Pruned search
// with early exit on the first non-trivial copy. Capped at k <= 10.
bool is_unique(const Permutation& pi, const SignedPartition& P);

struct UspnResult {
    int value;
    SignedPartition witness;
};

// Unique signed partition number: maximum size of a signed partition whose
// blowup has only trivial copies. Exhaustive over all 2^(k-1) compositions,
// largest sizes first. Capped at k <= 10.
UspnResult uspn(const Permutation& pi);

// sigma' shadowed with respect to sigma: one of the four directional cases
// cutting sigma' extremes off from its neighbor entry toward sigma.
// Both blocks must have length >= 2 and be disjoint.
bool is_shadowed(const Permutation& pi, const ConsecutiveBlock& sigma,
                 const ConsecutiveBlock& sigma_prime);

// Ordered collection of pairwise disjoint blocks, first one distinguished.
struct Entangling {
    std::vector<ConsecutiveBlock> blocks;
};

// Checks the three entangling conditions: each later block sits outside the
// first with its inner endpoint value strictly between the running min and
// max of the earlier blocks; no later block is shadowed with respect to the
// first; every value in [k] is spanned by some block. Blocks must be within
// range; overlapping or singleton blocks yield false.
bool is_entangling(const Permutation& pi, const Entangling& E);

struct EntanglingNumberResult {
    int value = 0;
    std::optional<Entangling> witness;
};

// d(pi) = max over entanglings of k - sum(|sigma|-1). Monotone permutations
// are reported as 0 with no witness (see README). Capped at k <= 14.
EntanglingNumberResult entangling_number(const Permutation& pi, int cap = 14);

// m(pi) = max |pi_{i+1} - pi_i|. Rejects k = 1.
int max_adjacent_gap(const Permutation& pi);

// Builds the signed partition (Lambda(E), S) from an entangling: entangling
// blocks become parts, everything else a singleton; long blocks take their
// forced sign, singletons left of the first block compare with their right
// neighbor and singletons right of it with their left neighbor. The result
// is unique whenever E is a valid entangling.
SignedPartition entangling_sign_vector(const Permutation& pi, const Entangling& E);

// Necessary conditions for a partition to admit a unique signing: every value
// covered by a long block's span, and every long block's non-extreme min/max
// straddled by another block.
bool satisfies_necessary_conditions(const Permutation& pi, const Partition& partition);

struct RandomPermutationStats {
    std::vector<int> d_values;  // one entangling number per sample
    double frac_ge_km3 = 0.0;
    double frac_ge_km2 = 0.0;
};

// Uniform permutations of length k via seeded Fisher-Yates; exact d per
// sample. Requires 4 <= k <= cap.
RandomPermutationStats random_permutation_stats(int k, int samples,
                                                std::uint64_t seed, int cap = 14);

// Canonical member of the family with pi_l = 1 and pi_{l+i} = l+i:
// positions 1..l-1 carry 2..l ascending. Requires 2 <= l <= k-1; the result
// has max_adjacent_gap equal to l.
Permutation hierarchy_permutation(int k, int l);

}  // namespace permpat
