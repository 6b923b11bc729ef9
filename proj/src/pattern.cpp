#include "permpat/pattern.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permpat {

bool is_finite_sequence(const Sequence& f) {
    return std::all_of(f.begin(), f.end(),
                       [](double v) { return std::isfinite(v); });
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
    const int k = static_cast<int>(values_.size());
    if (k < 1) throw std::invalid_argument("permutation must have length >= 1");
    inverse_.assign(static_cast<std::size_t>(k), 0);
    for (int pos = 1; pos <= k; ++pos) {
        const int v = values_[static_cast<std::size_t>(pos) - 1];
        if (v < 1 || v > k)
            throw std::invalid_argument("permutation entry out of range");
        if (inverse_[static_cast<std::size_t>(v) - 1] != 0)
            throw std::invalid_argument("permutation entry repeated");
        inverse_[static_cast<std::size_t>(v) - 1] = pos;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string token(text.substr(pos, comma - pos));
        // trim spaces
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw std::invalid_argument("empty entry in permutation literal");
        token = token.substr(first, last - first + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad permutation literal: " + token);
        }
        if (used != token.size())
            throw std::invalid_argument("bad permutation literal: " + token);
        vals.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return Permutation(std::move(vals));
}

bool Permutation::is_increasing() const {
    for (int i = 1; i < size(); ++i)
        if (values_[static_cast<std::size_t>(i)] <
            values_[static_cast<std::size_t>(i) - 1])
            return false;
    return true;
}

bool Permutation::is_decreasing() const {
    for (int i = 1; i < size(); ++i)
        if (values_[static_cast<std::size_t>(i)] >
            values_[static_cast<std::size_t>(i) - 1])
            return false;
    return true;
}

std::string Permutation::to_string() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values_[static_cast<std::size_t>(i)]);
    }
    return out;
}

bool is_copy_of(const Sequence& f, const Permutation& pi, const PatternCopy& copy) {
    const int k = pi.size();
    if (static_cast<int>(copy.indices.size()) != k) return false;
    for (int x = 0; x < k; ++x) {
        const int ix = copy.indices[static_cast<std::size_t>(x)];
        if (ix < 1 || ix > static_cast<int>(f.size())) return false;
        if (x > 0 && ix <= copy.indices[static_cast<std::size_t>(x) - 1]) return false;
    }
    for (int x = 0; x < k; ++x)
        for (int y = x + 1; y < k; ++y) {
            const double fx = f[static_cast<std::size_t>(copy.indices[static_cast<std::size_t>(x)]) - 1];
            const double fy = f[static_cast<std::size_t>(copy.indices[static_cast<std::size_t>(y)]) - 1];
            if ((fx < fy) != (pi.at(x + 1) < pi.at(y + 1))) return false;
            if ((fx > fy) != (pi.at(x + 1) > pi.at(y + 1))) return false;
        }
    return true;
}

bool order_isomorphic(const Sequence& x, const Sequence& y) {
    if (x.size() != y.size()) return false;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((x[i] < x[j]) != (y[i] < y[j])) return false;
            if ((x[i] > x[j]) != (y[i] > y[j])) return false;
        }
    return true;
}

namespace {

struct CopySearch {
    const double* f;
    int n;
    const Permutation& pi;
    int k;
    const std::function<bool(const PatternCopy&)>& visit;
    std::vector<int> chosen;  // 1-based positions of the matched prefix
    bool stopped = false;

    // Open value interval admissible for pattern position t (1-based), given
    // the matched prefix: strictly above every matched entry with a smaller
    // pattern value and strictly below every matched entry with a larger one.
    void window(int t, double& lo, double& hi) const {
        lo = -std::numeric_limits<double>::infinity();
        hi = std::numeric_limits<double>::infinity();
        const int v = pi.at(t);
        for (int s = 1; s < t; ++s) {
            const double fv = f[chosen[static_cast<std::size_t>(s) - 1] - 1];
            if (pi.at(s) < v)
                lo = std::max(lo, fv);
            else
                hi = std::min(hi, fv);
        }
    }

    void dfs(int t, int start) {
        double lo, hi;
        window(t, lo, hi);
        if (!(lo < hi)) return;
        for (int p = start; p <= n - (k - t); ++p) {
            const double v = f[p - 1];
            if (!(lo < v && v < hi)) continue;
            chosen.push_back(p);
            if (t == k) {
                if (!visit(PatternCopy{chosen})) stopped = true;
            } else {
                dfs(t + 1, p + 1);
            }
            chosen.pop_back();
            if (stopped) return;
        }
    }
};

}  // namespace

void for_each_copy(const Sequence& f, const Permutation& pi,
                   const std::function<bool(const PatternCopy&)>& visit) {
    const int n = static_cast<int>(f.size());
    const int k = pi.size();
    if (n < k) return;
    CopySearch search{f.data(), n, pi, k, visit, {}, false};
    search.chosen.reserve(static_cast<std::size_t>(k));
    search.dfs(1, 1);
}

std::optional<PatternCopy> find_copy(const Sequence& f, const Permutation& pi) {
    std::optional<PatternCopy> out;
    for_each_copy(f, pi, [&](const PatternCopy& c) {
        out = c;
        return false;
    });
    return out;
}

std::vector<PatternCopy> enumerate_copies(const Sequence& f, const Permutation& pi,
                                          std::optional<std::size_t> limit) {
    std::vector<PatternCopy> out;
    if (limit && *limit == 0) return out;
    for_each_copy(f, pi, [&](const PatternCopy& c) {
        out.push_back(c);
        return !limit || out.size() < *limit;
    });
    return out;
}

std::vector<PatternCopy> max_disjoint_copies_greedy(const Sequence& f,
                                                    const Permutation& pi) {
    std::vector<PatternCopy> out;
    std::vector<int> active;  // remaining positions, ascending
    active.reserve(f.size());
    for (int p = 1; p <= static_cast<int>(f.size()); ++p) active.push_back(p);
    for (;;) {
        Sequence sub;
        sub.reserve(active.size());
        for (int p : active) sub.push_back(f[static_cast<std::size_t>(p) - 1]);
        auto copy = find_copy(sub, pi);
        if (!copy) break;
        PatternCopy mapped;
        mapped.indices.reserve(copy->indices.size());
        for (int idx : copy->indices)
            mapped.indices.push_back(active[static_cast<std::size_t>(idx) - 1]);
        std::vector<int> next;
        next.reserve(active.size() - mapped.indices.size());
        std::size_t used = 0;
        for (int p : active) {
            if (used < mapped.indices.size() && mapped.indices[used] == p)
                ++used;
            else
                next.push_back(p);
        }
        active = std::move(next);
        out.push_back(std::move(mapped));
    }
    return out;
}

namespace {

bool strictly_increasing(const Sequence& f) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (!(f[i - 1] < f[i])) return false;
    return true;
}

bool strictly_decreasing(const Sequence& f) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (!(f[i - 1] > f[i])) return false;
    return true;
}

// Linear scan for a (1,3,2)-copy: positions i < j < l with f(i) < f(l) < f(j).
// Right-to-left sweep keeping a decreasing stack of candidate last entries;
// `third` tracks the largest value popped so far together with the pair that
// popped it.
std::optional<std::array<int, 3>> find_132(const Sequence& f) {
    const int n = static_cast<int>(f.size());
    std::vector<int> stack;  // positions, values decreasing from bottom to top
    double third = -std::numeric_limits<double>::infinity();
    int third_mid = 0, third_last = 0;
    for (int i = n; i >= 1; --i) {
        const double v = f[static_cast<std::size_t>(i) - 1];
        if (v < third) return std::array<int, 3>{i, third_mid, third_last};
        while (!stack.empty() && v > f[static_cast<std::size_t>(stack.back()) - 1]) {
            const double popped = f[static_cast<std::size_t>(stack.back()) - 1];
            if (popped > third) {
                third = popped;
                third_mid = i;
                third_last = stack.back();
            }
            stack.pop_back();
        }
        stack.push_back(i);
    }
    return std::nullopt;
}

}  // namespace

std::optional<PatternCopy> find_any_copy(const Sequence& f, const Permutation& pi) {
    const int n = static_cast<int>(f.size());
    const int k = pi.size();
    if (n < k) return std::nullopt;
    if (strictly_increasing(f)) {
        if (!pi.is_increasing()) return std::nullopt;
        PatternCopy c;
        for (int p = 1; p <= k; ++p) c.indices.push_back(p);
        return c;
    }
    if (strictly_decreasing(f)) {
        if (!pi.is_decreasing()) return std::nullopt;
        PatternCopy c;
        for (int p = 1; p <= k; ++p) c.indices.push_back(p);
        return c;
    }
    if (k == 3 && !pi.is_monotone()) {
        // Reduce to (1,3,2): reverse positions and/or negate values.
        const bool rev = pi.at(1) == 2 && pi.at(2) == 3;   // (2,3,1)
        const bool neg = pi.at(1) == 3;                    // (3,1,2)
        const bool both = pi.at(1) == 2 && pi.at(2) == 1;  // (2,1,3)
        Sequence g(f);
        if (rev || both) std::reverse(g.begin(), g.end());
        if (neg || both)
            for (double& v : g) v = -v;
        auto hit = find_132(g);
        if (!hit) return std::nullopt;
        PatternCopy c;
        if (rev || both) {
            c.indices = {n + 1 - (*hit)[2], n + 1 - (*hit)[1], n + 1 - (*hit)[0]};
        } else {
            c.indices = {(*hit)[0], (*hit)[1], (*hit)[2]};
        }
        if (!is_copy_of(f, pi, c))
            throw std::logic_error("length-3 fast path produced a bad witness");
        return c;
    }
    return find_copy(f, pi);
}

Permutation symmetry(const Permutation& pi, SymmetryOp which) {
    const int k = pi.size();
    std::vector<int> v(static_cast<std::size_t>(k));
    switch (which) {
        case SymmetryOp::Reverse:
            for (int i = 1; i <= k; ++i)
                v[static_cast<std::size_t>(i) - 1] = pi.at(k + 1 - i);
            break;
        case SymmetryOp::Complement:
            for (int i = 1; i <= k; ++i)
                v[static_cast<std::size_t>(i) - 1] = k + 1 - pi.at(i);
            break;
        case SymmetryOp::Inverse:
            for (int val = 1; val <= k; ++val)
                v[static_cast<std::size_t>(val) - 1] = pi.position_of(val);
            break;
    }
    return Permutation(std::move(v));
}

}  // namespace permpat
