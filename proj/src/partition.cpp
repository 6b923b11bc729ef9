#include "permpat/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "permpat/rng.hpp"

namespace permpat {

Partition::Partition(int k, std::vector<ConsecutiveBlock> blocks)
    : k_(k), blocks_(std::move(blocks)) {
    if (k_ < 1) throw std::invalid_argument("partition needs k >= 1");
    if (blocks_.empty()) throw std::invalid_argument("partition needs >= 1 block");
    int expect = 1;
    for (const auto& b : blocks_) {
        if (b.lo != expect || b.hi < b.lo)
            throw std::invalid_argument("partition blocks must tile [k] in order");
        expect = b.hi + 1;
    }
    if (expect != k_ + 1)
        throw std::invalid_argument("partition blocks must cover [k]");
}

Partition Partition::from_sizes(const std::vector<int>& sizes) {
    std::vector<ConsecutiveBlock> blocks;
    int lo = 1;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("block size must be positive");
        blocks.push_back({lo, lo + s - 1});
        lo += s;
    }
    return Partition(lo - 1, std::move(blocks));
}

Sign forced_sign(const Permutation& pi, const ConsecutiveBlock& block) {
    if (block.lo < 1 || block.hi > pi.size() || block.lo > block.hi)
        throw std::invalid_argument("block out of range");
    if (block.length() < 2)
        throw std::invalid_argument("forced_sign: singleton blocks have no forced sign");
    int min_pos = block.lo, max_pos = block.lo;
    for (int p = block.lo; p <= block.hi; ++p) {
        if (pi.at(p) < pi.at(min_pos)) min_pos = p;
        if (pi.at(p) > pi.at(max_pos)) max_pos = p;
    }
    return min_pos < max_pos ? Sign::Minus : Sign::Plus;
}

SignedPartition::SignedPartition(const Permutation& pi, Partition partition,
                                 std::vector<Sign> signs)
    : partition_(std::move(partition)), signs_(std::move(signs)) {
    if (partition_.k() != pi.size())
        throw std::invalid_argument("partition does not match the permutation length");
    if (signs_.size() != partition_.blocks().size())
        throw std::invalid_argument("one sign per block required");
    for (int i = 0; i < partition_.size(); ++i) {
        const auto& b = partition_.blocks()[static_cast<std::size_t>(i)];
        if (b.length() > 1 &&
            signs_[static_cast<std::size_t>(i)] != forced_sign(pi, b))
            throw std::invalid_argument("sign of a long block must be its forced sign");
    }
}

std::vector<SignedPartition> admissible_signed_partitions(const Permutation& pi,
                                                          const Partition& partition) {
    std::vector<int> singles;
    for (int i = 0; i < partition.size(); ++i)
        if (partition.blocks()[static_cast<std::size_t>(i)].length() == 1)
            singles.push_back(i);
    std::vector<Sign> base(static_cast<std::size_t>(partition.size()), Sign::Plus);
    for (int i = 0; i < partition.size(); ++i) {
        const auto& b = partition.blocks()[static_cast<std::size_t>(i)];
        if (b.length() > 1) base[static_cast<std::size_t>(i)] = forced_sign(pi, b);
    }
    std::vector<SignedPartition> out;
    const std::size_t variants = std::size_t{1} << singles.size();
    out.reserve(variants);
    for (std::size_t mask = 0; mask < variants; ++mask) {
        std::vector<Sign> signs = base;
        for (std::size_t j = 0; j < singles.size(); ++j)
            signs[static_cast<std::size_t>(singles[j])] =
                (mask >> j) & 1 ? Sign::Minus : Sign::Plus;
        out.emplace_back(pi, partition, std::move(signs));
    }
    return out;
}

Sequence blowup_sequence(const Permutation& pi, const SignedPartition& P) {
    const int k = pi.size();
    Sequence out(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
    const double denom = 2.0 * k;
    for (int b = 0; b < P.size(); ++b) {
        const auto& block = P.partition().blocks()[static_cast<std::size_t>(b)];
        const Sign s = P.signs()[static_cast<std::size_t>(b)];
        const int r_prev = block.lo - 1;
        const int kb = block.length();
        for (int m = 0; m < k; ++m) {
            const int level = s == Sign::Plus ? m : k - 1 - m;
            for (int j = 1; j <= kb; ++j) {
                const int pos = r_prev * k + m * kb + j;
                out[static_cast<std::size_t>(pos) - 1] =
                    level + pi.at(r_prev + j) / denom;
            }
        }
    }
    return out;
}

std::vector<PatternCopy> blowup_trivial_copies(const Permutation& pi,
                                               const SignedPartition& P) {
    const int k = pi.size();
    const Sequence f = blowup_sequence(pi, P);
    std::vector<PatternCopy> out(static_cast<std::size_t>(k));
    for (int pos = 1; pos <= k * k; ++pos) {
        const int level = static_cast<int>(std::floor(f[static_cast<std::size_t>(pos) - 1]));
        out[static_cast<std::size_t>(level)].indices.push_back(pos);
    }
    return out;
}

bool is_unique(const Permutation& pi, const SignedPartition& P) {
    const int k = pi.size();
    if (k > 10)
        throw std::invalid_argument("uniqueness check capped at k <= 10");
    const Sequence f = blowup_sequence(pi, P);
    const auto trivial = blowup_trivial_copies(pi, P);
    bool unique = true;
    for_each_copy(f, pi, [&](const PatternCopy& c) {
        const int level = static_cast<int>(
            std::floor(f[static_cast<std::size_t>(c.indices[0]) - 1]));
        if (c == trivial[static_cast<std::size_t>(level)]) return true;
        unique = false;
        return false;
    });
    return unique;
}

bool satisfies_necessary_conditions(const Permutation& pi, const Partition& partition) {
    const int k = pi.size();
    struct Span {
        int vmin, vmax, len;
    };
    std::vector<Span> spans;
    spans.reserve(partition.blocks().size());
    for (const auto& b : partition.blocks()) {
        int vmin = pi.at(b.lo), vmax = pi.at(b.lo);
        for (int p = b.lo; p <= b.hi; ++p) {
            vmin = std::min(vmin, pi.at(p));
            vmax = std::max(vmax, pi.at(p));
        }
        spans.push_back({vmin, vmax, b.length()});
    }
    for (int value = 1; value <= k; ++value) {
        bool covered = false;
        for (const auto& s : spans)
            if (s.len > 1 && s.vmin <= value && value <= s.vmax) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    for (const auto& s : spans) {
        if (s.len <= 1) continue;
        if (s.vmax < k) {
            bool straddled = false;
            for (const auto& t : spans)
                if (t.vmin < s.vmax && s.vmax < t.vmax) {
                    straddled = true;
                    break;
                }
            if (!straddled) return false;
        }
        if (s.vmin > 1) {
            bool straddled = false;
            for (const auto& t : spans)
                if (t.vmin < s.vmin && s.vmin < t.vmax) {
                    straddled = true;
                    break;
                }
            if (!straddled) return false;
        }
    }
    return true;
}

UspnResult uspn(const Permutation& pi) {
    const int k = pi.size();
    if (k > 10) throw std::invalid_argument("uspn capped at k <= 10");
    if (k == 1) {
        SignedPartition whole(pi, Partition(1, {{1, 1}}), {Sign::Plus});
        return {1, whole};
    }
    // Compositions of k, indexed by boundary bitmasks, grouped by part count
    // so larger partitions are tried first and the first unique hit is the
    // maximum. Partitions failing the necessary conditions are never unique
    // and are skipped.
    const std::uint32_t mask_count = std::uint32_t{1} << (k - 1);
    std::vector<std::vector<std::uint32_t>> by_count(static_cast<std::size_t>(k) + 1);
    for (std::uint32_t mask = 0; mask < mask_count; ++mask)
        by_count[static_cast<std::size_t>(__builtin_popcount(mask)) + 1].push_back(mask);
    for (int count = k; count >= 1; --count) {
        for (std::uint32_t mask : by_count[static_cast<std::size_t>(count)]) {
            std::vector<ConsecutiveBlock> blocks;
            int lo = 1;
            for (int boundary = 1; boundary < k; ++boundary) {
                if ((mask >> (boundary - 1)) & 1) {
                    blocks.push_back({lo, boundary});
                    lo = boundary + 1;
                }
            }
            blocks.push_back({lo, k});
            Partition partition(k, std::move(blocks));
            if (!satisfies_necessary_conditions(pi, partition)) continue;
            for (const auto& P : admissible_signed_partitions(pi, partition))
                if (is_unique(pi, P)) return {count, P};
        }
    }
    throw std::logic_error("uspn: no unique signed partition found");
}

bool is_shadowed(const Permutation& pi, const ConsecutiveBlock& sigma,
                 const ConsecutiveBlock& sigma_prime) {
    const int k = pi.size();
    for (const auto* b : {&sigma, &sigma_prime})
        if (b->lo < 1 || b->hi > k || b->lo > b->hi)
            throw std::invalid_argument("block out of range");
    if (sigma.length() < 2 || sigma_prime.length() < 2)
        throw std::invalid_argument("is_shadowed requires blocks of length >= 2");
    if (sigma.overlaps(sigma_prime))
        throw std::invalid_argument("is_shadowed requires disjoint blocks");
    int min_pos = sigma_prime.lo, max_pos = sigma_prime.lo;
    for (int p = sigma_prime.lo; p <= sigma_prime.hi; ++p) {
        if (pi.at(p) < pi.at(min_pos)) min_pos = p;
        if (pi.at(p) > pi.at(max_pos)) max_pos = p;
    }
    const int vmin = pi.at(min_pos);
    const int vmax = pi.at(max_pos);
    if (sigma_prime.lo > sigma.hi) {
        const int neighbor = pi.at(sigma_prime.lo - 1);
        if (min_pos < max_pos && neighbor > vmax) return true;
        if (min_pos > max_pos && neighbor < vmin) return true;
    } else {
        const int neighbor = pi.at(sigma_prime.hi + 1);
        if (min_pos < max_pos && neighbor < vmin) return true;
        if (min_pos > max_pos && neighbor > vmax) return true;
    }
    return false;
}

namespace {

struct BlockFacts {
    ConsecutiveBlock b;
    std::uint32_t posmask = 0;
    std::uint32_t spanmask = 0;  // bits vmin-1 .. vmax-1
    int vmin = 0, vmax = 0;
    int cost = 0;
};

BlockFacts block_facts(const Permutation& pi, ConsecutiveBlock b) {
    BlockFacts facts;
    facts.b = b;
    facts.vmin = pi.at(b.lo);
    facts.vmax = pi.at(b.lo);
    for (int p = b.lo; p <= b.hi; ++p) {
        facts.posmask |= std::uint32_t{1} << (p - 1);
        facts.vmin = std::min(facts.vmin, pi.at(p));
        facts.vmax = std::max(facts.vmax, pi.at(p));
    }
    for (int v = facts.vmin; v <= facts.vmax; ++v)
        facts.spanmask |= std::uint32_t{1} << (v - 1);
    facts.cost = b.length() - 1;
    return facts;
}

}  // namespace

bool is_entangling(const Permutation& pi, const Entangling& E) {
    const int k = pi.size();
    if (E.blocks.empty()) return false;
    for (const auto& b : E.blocks) {
        if (b.lo < 1 || b.hi > k || b.lo > b.hi)
            throw std::invalid_argument("entangling block out of range");
        if (b.length() < 2) return false;
    }
    for (std::size_t i = 0; i < E.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < E.blocks.size(); ++j)
            if (E.blocks[i].overlaps(E.blocks[j])) return false;
    const auto& first = E.blocks.front();
    auto facts0 = block_facts(pi, first);
    int run_min = facts0.vmin, run_max = facts0.vmax;
    std::uint32_t cover = facts0.spanmask;
    for (std::size_t j = 1; j < E.blocks.size(); ++j) {
        const auto facts = block_facts(pi, E.blocks[j]);
        const int endpoint = E.blocks[j].lo > first.hi ? pi.at(E.blocks[j].lo)
                                                       : pi.at(E.blocks[j].hi);
        if (!(run_min < endpoint && endpoint < run_max)) return false;
        if (is_shadowed(pi, first, E.blocks[j])) return false;
        run_min = std::min(run_min, facts.vmin);
        run_max = std::max(run_max, facts.vmax);
        cover |= facts.spanmask;
    }
    const std::uint32_t full = k >= 32 ? ~std::uint32_t{0}
                                       : (std::uint32_t{1} << k) - 1;
    return cover == full;
}

namespace {

// Minimizes sum(|sigma|-1) over valid entanglings via iterative deepening
// over that cost. States that already failed at a given remaining budget are
// memoized; the first solution found (blocks tried in lexicographic order)
// is the witness.
struct EntanglingSearch {
    const Permutation& pi;
    int k;
    std::vector<BlockFacts> blocks;
    std::vector<std::vector<char>> shadowed_vs;  // [s1][j]
    std::uint32_t full_cover;
    std::unordered_set<std::uint64_t> failed;
    std::vector<ConsecutiveBlock> stack;
    std::optional<Entangling> found;

    explicit EntanglingSearch(const Permutation& p) : pi(p), k(p.size()) {
        for (int lo = 1; lo < k; ++lo)
            for (int hi = lo + 1; hi <= k; ++hi)
                blocks.push_back(block_facts(pi, {lo, hi}));
        shadowed_vs.assign(blocks.size(), std::vector<char>(blocks.size(), 0));
        for (std::size_t a = 0; a < blocks.size(); ++a)
            for (std::size_t b = 0; b < blocks.size(); ++b)
                if (a != b && !blocks[a].b.overlaps(blocks[b].b))
                    shadowed_vs[a][b] =
                        is_shadowed(pi, blocks[a].b, blocks[b].b) ? 1 : 0;
        full_cover = (std::uint32_t{1} << k) - 1;
    }

    std::uint64_t key(std::size_t s1, int budget, std::uint32_t occ,
                      std::uint32_t cover, int run_min, int run_max) const {
        std::uint64_t key = s1;
        key = key << 14 | occ;
        key = key << 14 | cover;
        key = key << 4 | static_cast<std::uint64_t>(run_min);
        key = key << 4 | static_cast<std::uint64_t>(run_max);
        key = key << 4 | static_cast<std::uint64_t>(budget);
        return key;
    }

    bool dfs(std::size_t s1, int budget, std::uint32_t occ, std::uint32_t cover,
             int run_min, int run_max) {
        if (cover == full_cover) {
            found = Entangling{stack};
            return true;
        }
        if (budget == 0) return false;
        const std::uint64_t state = key(s1, budget, occ, cover, run_min, run_max);
        if (failed.count(state)) return false;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const auto& cand = blocks[j];
            if (cand.cost > budget) continue;
            if (cand.posmask & occ) continue;
            if (shadowed_vs[s1][j]) continue;
            const int endpoint = cand.b.lo > blocks[s1].b.hi ? pi.at(cand.b.lo)
                                                             : pi.at(cand.b.hi);
            if (!(run_min < endpoint && endpoint < run_max)) continue;
            stack.push_back(cand.b);
            if (dfs(s1, budget - cand.cost, occ | cand.posmask,
                    cover | cand.spanmask, std::min(run_min, cand.vmin),
                    std::max(run_max, cand.vmax)))
                return true;
            stack.pop_back();
        }
        failed.insert(state);
        return false;
    }

    std::optional<Entangling> solve_at_cost(int cost) {
        failed.clear();
        for (std::size_t s1 = 0; s1 < blocks.size(); ++s1) {
            if (blocks[s1].cost > cost) continue;
            stack.assign(1, blocks[s1].b);
            if (dfs(s1, cost - blocks[s1].cost, blocks[s1].posmask,
                    blocks[s1].spanmask, blocks[s1].vmin, blocks[s1].vmax))
                return found;
        }
        return std::nullopt;
    }
};

}  // namespace

EntanglingNumberResult entangling_number(const Permutation& pi, int cap) {
    const int k = pi.size();
    if (k > cap)
        throw std::invalid_argument("entangling_number capped at k <= " +
                                    std::to_string(cap));
    if (pi.is_monotone()) return {0, std::nullopt};
    EntanglingSearch search(pi);
    for (int cost = 1; cost <= k - 1; ++cost)
        if (auto witness = search.solve_at_cost(cost))
            return {k - cost, std::move(witness)};
    return {0, std::nullopt};
}

int max_adjacent_gap(const Permutation& pi) {
    if (pi.size() < 2)
        throw std::invalid_argument("max_adjacent_gap requires k >= 2");
    int best = 0;
    for (int i = 1; i < pi.size(); ++i)
        best = std::max(best, std::abs(pi.at(i + 1) - pi.at(i)));
    return best;
}

SignedPartition entangling_sign_vector(const Permutation& pi, const Entangling& E) {
    if (!is_entangling(pi, E))
        throw std::invalid_argument("entangling_sign_vector requires a valid entangling");
    const int k = pi.size();
    std::vector<ConsecutiveBlock> sorted = E.blocks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<ConsecutiveBlock> parts;
    std::size_t next = 0;
    int pos = 1;
    while (pos <= k) {
        if (next < sorted.size() && sorted[next].lo == pos) {
            parts.push_back(sorted[next]);
            pos = sorted[next].hi + 1;
            ++next;
        } else {
            parts.push_back({pos, pos});
            ++pos;
        }
    }
    int lambda1 = 0;  // 1-based index of the distinguished block within parts
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i] == E.blocks.front()) lambda1 = static_cast<int>(i) + 1;
    std::vector<Sign> signs;
    signs.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        const int index = static_cast<int>(i) + 1;
        if (part.length() > 1) {
            signs.push_back(forced_sign(pi, part));
        } else if (index < lambda1) {
            signs.push_back(pi.at(part.hi) > pi.at(part.hi + 1) ? Sign::Plus
                                                                : Sign::Minus);
        } else {
            signs.push_back(pi.at(part.hi) < pi.at(part.hi - 1) ? Sign::Plus
                                                                : Sign::Minus);
        }
    }
    return SignedPartition(pi, Partition(k, std::move(parts)), std::move(signs));
}

RandomPermutationStats random_permutation_stats(int k, int samples,
                                                std::uint64_t seed, int cap) {
    if (k < 4) throw std::invalid_argument("random_permutation_stats requires k >= 4");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (k > cap)
        throw std::invalid_argument("random_permutation_stats capped at k <= " +
                                    std::to_string(cap));
    Rng rng(seed);
    RandomPermutationStats stats;
    stats.d_values.reserve(static_cast<std::size_t>(samples));
    int ge_km3 = 0, ge_km2 = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<int> values(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) values[static_cast<std::size_t>(i)] = i + 1;
        rng.shuffle(values);
        const int d = entangling_number(Permutation(values), cap).value;
        stats.d_values.push_back(d);
        if (d >= k - 3) ++ge_km3;
        if (d >= k - 2) ++ge_km2;
    }
    stats.frac_ge_km3 = static_cast<double>(ge_km3) / samples;
    stats.frac_ge_km2 = static_cast<double>(ge_km2) / samples;
    return stats;
}

Permutation hierarchy_permutation(int k, int l) {
    if (l < 2 || l > k - 1)
        throw std::invalid_argument("hierarchy_permutation requires 2 <= l <= k-1");
    std::vector<int> values(static_cast<std::size_t>(k));
    for (int pos = 1; pos < l; ++pos)
        values[static_cast<std::size_t>(pos) - 1] = pos + 1;
    values[static_cast<std::size_t>(l) - 1] = 1;
    for (int pos = l + 1; pos <= k; ++pos)
        values[static_cast<std::size_t>(pos) - 1] = pos;
    return Permutation(std::move(values));
}

}  // namespace permpat
