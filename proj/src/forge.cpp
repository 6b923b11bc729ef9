#include "permpat/forge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "permpat/rng.hpp"

namespace permpat {

namespace {

// eps*n as an exact integer, or 0 if it is not one (within rounding slack).
std::size_t integral_planted(std::size_t n, double eps) {
    const double en = eps * static_cast<double>(n);
    const double rounded = std::round(en);
    if (rounded < 1.0 || std::abs(en - rounded) > 1e-6) return 0;
    return static_cast<std::size_t>(rounded);
}

}  // namespace

FarParams snap_far_params(const Permutation& pi, std::size_t n, double eps) {
    const std::size_t k = static_cast<std::size_t>(pi.size());
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::size_t snapped_n = (n + k / 2) / k * k;
    if (snapped_n < 2 * k) snapped_n = 2 * k;  // room for eps <= 1/(2k)
    double planted = std::round(eps * static_cast<double>(snapped_n));
    const double max_planted = std::floor(static_cast<double>(snapped_n) / (2.0 * k));
    planted = std::min(std::max(planted, 1.0), max_planted);
    FarParams out;
    out.n = snapped_n;
    out.planted = static_cast<std::size_t>(planted);
    out.eps = planted / static_cast<double>(snapped_n);
    return out;
}

Sequence forge_far_instance(const FarInstanceSpec& spec) {
    const Permutation& pi = spec.pi;
    const std::size_t k = static_cast<std::size_t>(pi.size());
    const std::size_t n = spec.n;
    if (n == 0 || n % k != 0)
        throw std::invalid_argument("n must be a positive multiple of k");
    const std::size_t planted = integral_planted(n, spec.eps);
    if (planted == 0)
        throw std::invalid_argument("eps*n must be a positive integer");
    if (spec.eps > 1.0 / (2.0 * static_cast<double>(k)) + 1e-12)
        throw std::invalid_argument("eps must be at most 1/(2k)");
    if (spec.P.partition().k() != pi.size())
        throw std::invalid_argument("signed partition does not match the pattern");
    if (!is_unique(pi, spec.P))
        throw std::invalid_argument("signed partition must be unique");

    const std::size_t m = n / k;
    Rng rng(mix_seed(spec.seed, 0xfa0));
    Sequence f(n, 0.0);
    const double denom = 2.0 * static_cast<double>(k);
    for (int b = 0; b < spec.P.size(); ++b) {
        const auto& block = spec.P.partition().blocks()[static_cast<std::size_t>(b)];
        const Sign sign = spec.P.signs()[static_cast<std::size_t>(b)];
        const std::size_t j_prev = static_cast<std::size_t>(block.lo) - 1;
        const std::size_t delta = static_cast<std::size_t>(block.length());
        const std::size_t base = m * j_prev;
        const std::size_t copies_len = planted * delta;
        // The eps*n stacked block copies occupy planted*delta of the
        // delta*m slots; the uniform starting offset hides their location.
        const std::size_t max_offset = delta * m - copies_len;
        const std::size_t offset =
            static_cast<std::size_t>(rng.below(max_offset + 1));
        const double low_pad = -1.0;
        const double high_pad = static_cast<double>(n);
        const double before = sign == Sign::Plus ? low_pad : high_pad;
        const double after = sign == Sign::Plus ? high_pad : low_pad;
        for (std::size_t x = 1; x <= offset; ++x) f[base + x - 1] = before;
        for (std::size_t r = 0; r < planted; ++r) {
            const std::size_t level = sign == Sign::Plus ? r : planted - 1 - r;
            for (std::size_t j = 1; j <= delta; ++j) {
                const std::size_t pos = base + offset + r * delta + j;
                f[pos - 1] = static_cast<double>(level) +
                             pi.at(static_cast<int>(j_prev + j)) / denom;
            }
        }
        for (std::size_t x = base + offset + copies_len + 1; x <= base + delta * m; ++x)
            f[x - 1] = after;
    }
    return f;
}

Sequence forge_free_instance(const Permutation& pi, std::size_t n, std::uint64_t seed) {
    if (pi.size() < 2)
        throw std::invalid_argument("forge_free_instance requires k >= 2");
    Rng rng(mix_seed(seed, 0xf4ee));
    const bool decreasing = pi.is_increasing();
    Sequence f;
    f.reserve(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double step = (1.0 + static_cast<double>(rng.below(8))) / 8.0;
        v += decreasing ? -step : step;
        f.push_back(v);
    }
    return f;
}

TemplateSearchInstance forge_template_search(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    Rng rng(mix_seed(seed, 0x7e4));
    TemplateSearchInstance inst;
    for (;;) {
        inst.T.clear();
        inst.T.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            double u = rng.unit();
            while (u == 0.0) u = rng.unit();
            inst.T.push_back(u);
        }
        std::sort(inst.T.begin(), inst.T.end());
        const bool distinct =
            std::adjacent_find(inst.T.begin(), inst.T.end()) == inst.T.end();
        if (distinct) break;
    }
    inst.delta = static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(m) + 1));
    inst.S.assign(static_cast<std::size_t>(inst.delta), -1.0);
    inst.S.insert(inst.S.end(), inst.T.begin(), inst.T.end());
    inst.S.resize(3 * static_cast<std::size_t>(m), 2.0);
    return inst;
}

ReductionPair forge_reduction_pair(const TemplateSearchInstance& inst) {
    const int m = inst.m();
    if (m < 2) throw std::invalid_argument("reduction pair requires m >= 2");
    const auto& T = inst.T;
    std::vector<double> delta(static_cast<std::size_t>(m), 0.0);
    for (int i = 1; i <= m; ++i) {
        const double left = i > 1 ? T[static_cast<std::size_t>(i) - 1] -
                                        T[static_cast<std::size_t>(i) - 2]
                                  : std::numeric_limits<double>::infinity();
        const double right = i < m ? T[static_cast<std::size_t>(i)] -
                                         T[static_cast<std::size_t>(i) - 1]
                                   : std::numeric_limits<double>::infinity();
        delta[static_cast<std::size_t>(i) - 1] = 0.25 * std::min(left, right);
    }
    for (double d : delta)
        if (!(d > 0.0))
            throw std::invalid_argument("tied template values, cannot perturb");

    const std::size_t n = 5 * static_cast<std::size_t>(m);
    ReductionPair pair;
    pair.source = inst;
    pair.f_no.assign(n, 0.0);
    // Duplicated-template prefix in decreasing order: the pair at positions
    // (2l-1, 2l) carries T_{m+1-l} split into an ascent. With the pairs
    // descending, the only ascents ahead of the tail are the within-pair
    // ones, so the only (1,3,2)-copies are pair + matching tail entry.
    for (int l = 1; l <= m; ++l) {
        const std::size_t x = static_cast<std::size_t>(m - l);  // T index - 1
        pair.f_no[static_cast<std::size_t>(2 * l) - 2] = T[x] - delta[x];
        pair.f_no[static_cast<std::size_t>(2 * l) - 1] = T[x] + delta[x];
    }
    for (std::size_t i = 1; i <= inst.S.size(); ++i)
        pair.f_no[2 * static_cast<std::size_t>(m) + i - 1] = inst.S[i - 1];
    pair.f_yes = pair.f_no;
    for (int x = 1; x <= m; ++x) {
        const std::size_t pos =
            2 * static_cast<std::size_t>(m) + static_cast<std::size_t>(inst.delta + x);
        pair.f_yes[pos - 1] += 2.0 * delta[static_cast<std::size_t>(x) - 1];
    }

    if (n <= 320) {
        const Permutation p132({1, 3, 2});
        if (find_copy(pair.f_yes, p132))
            throw std::logic_error("reduction: f_yes is not (1,3,2)-free");
        if (max_disjoint_copies_greedy(pair.f_no, p132).size() !=
            static_cast<std::size_t>(m))
            throw std::logic_error("reduction: f_no packing size is not m");
    }
    return pair;
}

}  // namespace permpat
