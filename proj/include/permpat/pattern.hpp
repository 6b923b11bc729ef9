#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Positions are 1-based throughout: pattern positions live in [k], sequence
// positions in [n]. This matches the file formats and the CLI output.

namespace permpat {

using Sequence = std::vector<double>;

// True if every entry is a finite real (no NaN or infinities).
bool is_finite_sequence(const Sequence& f);

// A bijection on {1..k}, used as the forbidden order pattern.
class Permutation {
public:
    explicit Permutation(std::vector<int> values);

    static Permutation identity(int k);
    // Parses a comma-separated literal such as "1,3,2".
    static Permutation parse(std::string_view text);

    int size() const { return static_cast<int>(values_.size()); }
    int at(int pos) const { return values_[static_cast<std::size_t>(pos) - 1]; }
    int position_of(int value) const {
        return inverse_[static_cast<std::size_t>(value) - 1];
    }
    const std::vector<int>& values() const { return values_; }

    bool is_increasing() const;
    bool is_decreasing() const;
    bool is_monotone() const { return is_increasing() || is_decreasing(); }

    std::string to_string() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<int> values_;
    std::vector<int> inverse_;
};

// Strictly increasing tuple of sequence positions realizing a pattern.
struct PatternCopy {
    std::vector<int> indices;

    friend bool operator==(const PatternCopy& a, const PatternCopy& b) {
        return a.indices == b.indices;
    }
    friend bool operator<(const PatternCopy& a, const PatternCopy& b) {
        return a.indices < b.indices;
    }
};

// True iff the positions form a copy of pi in f (strict comparisons only).
bool is_copy_of(const Sequence& f, const Permutation& pi, const PatternCopy& copy);

// Equal lengths and identical pairwise order relations, ties included.
bool order_isomorphic(const Sequence& x, const Sequence& y);

// Visits pi-copies in lexicographic index order. The visitor returns false to
// stop the enumeration. Depth-first over positions, pruning each extension
// against the open value interval implied by the already-matched entries.
void for_each_copy(const Sequence& f, const Permutation& pi,
                   const std::function<bool(const PatternCopy&)>& visit);

// Lexicographically smallest pi-copy, or absent if f is pi-free.
std::optional<PatternCopy> find_copy(const Sequence& f, const Permutation& pi);

// All pi-copies in lexicographic order, truncated at limit.
std::vector<PatternCopy> enumerate_copies(
    const Sequence& f, const Permutation& pi,
    std::optional<std::size_t> limit = std::nullopt);

// Maximal (not maximum) set of pairwise entry-disjoint copies: repeatedly
// takes the lexicographically first copy among the remaining entries.
std::vector<PatternCopy> max_disjoint_copies_greedy(const Sequence& f,
                                                    const Permutation& pi);

// Existence check with a valid witness that need not be lexicographically
// smallest. Fast paths: strictly monotone inputs, and length-3 patterns via
// a linear stack scan after symmetry reduction. Falls back to for_each_copy.
std::optional<PatternCopy> find_any_copy(const Sequence& f, const Permutation& pi);

enum class SymmetryOp { Reverse, Complement, Inverse };

Permutation symmetry(const Permutation& pi, SymmetryOp which);

}  // namespace permpat
