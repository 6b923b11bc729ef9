#include "permpat/distance.hpp"

#include <algorithm>
#include <stdexcept>

namespace permpat {

namespace {

struct HittingSetSolver {
    const Sequence& f;
    const Permutation& pi;
    int n;
    std::vector<char> active;
    std::size_t best;
    std::vector<int> best_set;
    std::vector<int> current;

    Sequence active_subsequence(std::vector<int>& positions) const {
        Sequence sub;
        positions.clear();
        for (int p = 1; p <= n; ++p)
            if (active[static_cast<std::size_t>(p) - 1]) {
                sub.push_back(f[static_cast<std::size_t>(p) - 1]);
                positions.push_back(p);
            }
        return sub;
    }

    // Packing size of the remaining entries; every disjoint copy costs at
    // least one further deletion.
    std::size_t greedy_lower_bound() const {
        std::vector<char> scratch = active;
        std::size_t count = 0;
        for (;;) {
            Sequence sub;
            std::vector<int> positions;
            for (int p = 1; p <= n; ++p)
                if (scratch[static_cast<std::size_t>(p) - 1]) {
                    sub.push_back(f[static_cast<std::size_t>(p) - 1]);
                    positions.push_back(p);
                }
            auto copy = find_any_copy(sub, pi);
            if (!copy) return count;
            ++count;
            for (int idx : copy->indices)
                scratch[static_cast<std::size_t>(positions[static_cast<std::size_t>(idx) - 1]) - 1] = 0;
        }
    }

    void search() {
        if (current.size() >= best) return;
        std::vector<int> positions;
        const Sequence sub = active_subsequence(positions);
        auto copy = find_copy(sub, pi);
        if (!copy) {
            best = current.size();
            best_set = current;
            std::sort(best_set.begin(), best_set.end());
            return;
        }
        if (current.size() + greedy_lower_bound() >= best) return;
        for (int idx : copy->indices) {
            const int pos = positions[static_cast<std::size_t>(idx) - 1];
            active[static_cast<std::size_t>(pos) - 1] = 0;
            current.push_back(pos);
            search();
            current.pop_back();
            active[static_cast<std::size_t>(pos) - 1] = 1;
        }
    }
};

}  // namespace

ExactDistanceResult deletion_distance_exact(const Sequence& f, const Permutation& pi,
                                            std::optional<std::size_t> budget) {
    const int n = static_cast<int>(f.size());
    if (n > 64)
        throw std::invalid_argument("deletion_distance_exact supports n <= 64");
    HittingSetSolver solver{f, pi, n, std::vector<char>(f.size(), 1), 0, {}, {}};

    // Seed with the greedy packing deletion set: removing a maximal packing
    // leaves a pi-free sequence.
    const auto packing = max_disjoint_copies_greedy(f, pi);
    std::vector<int> seed_set;
    for (const auto& copy : packing)
        seed_set.insert(seed_set.end(), copy.indices.begin(), copy.indices.end());
    std::sort(seed_set.begin(), seed_set.end());
    solver.best = seed_set.size();
    solver.best_set = std::move(seed_set);
    if (budget && solver.best > *budget + 1) {
        solver.best = *budget + 1;  // only search up to the budget
        solver.best_set.clear();
    }
    solver.current.reserve(solver.best);
    solver.search();

    ExactDistanceResult result;
    if (budget && solver.best > *budget) {
        result.budget_exceeded = true;
        return result;
    }
    result.value = solver.best;
    result.deletions = solver.best_set;
    return result;
}

DistanceReport distance_bounds(const Sequence& f, const Permutation& pi,
                               std::size_t exact_threshold) {
    DistanceReport report;
    const auto packing = max_disjoint_copies_greedy(f, pi);
    report.lower = packing.size();
    report.upper = packing.size() * static_cast<std::size_t>(pi.size());
    if (report.lower == 0) {
        report.exact = 0;
    } else if (f.size() <= exact_threshold) {
        report.exact = deletion_distance_exact(f, pi).value;
    }
    return report;
}

Sequence deletion_set_to_modifications(const Sequence& f, const std::vector<int>& S) {
    const int n = static_cast<int>(f.size());
    std::vector<char> in_set(f.size(), 0);
    for (int p : S) {
        if (p < 1 || p > n) throw std::invalid_argument("deletion position out of range");
        in_set[static_cast<std::size_t>(p) - 1] = 1;
    }
    std::size_t remaining =
        static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), char(1)));
    if (remaining == f.size() && !f.empty())
        throw std::invalid_argument("at least one entry must survive");
    Sequence out = f;
    while (remaining > 0) {
        int x = 0, y = 0;
        for (int p = 1; p <= n && x == 0; ++p) {
            if (!in_set[static_cast<std::size_t>(p) - 1]) continue;
            if (p > 1 && !in_set[static_cast<std::size_t>(p) - 2]) {
                x = p;
                y = p - 1;
            } else if (p < n && !in_set[static_cast<std::size_t>(p)]) {
                x = p;
                y = p + 1;
            }
        }
        out[static_cast<std::size_t>(x) - 1] = out[static_cast<std::size_t>(y) - 1];
        in_set[static_cast<std::size_t>(x) - 1] = 0;
        --remaining;
    }
    return out;
}

}  // namespace permpat
