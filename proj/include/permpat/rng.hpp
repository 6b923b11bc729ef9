#pragma once

#include <cstdint>
#include <vector>

namespace permpat {

// splitmix64 step; also the documented hash used to derive per-trial seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and up to three salts.
// Used everywhere a fan-out of seeds is needed: trial seeds are
// mix_seed(base, point_index, trial_index).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a = 0,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64_next(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64_next(s);
    s ^= b + 0xbf58476d1ce4e5b9ULL;
    h ^= splitmix64_next(s);
    s ^= c + 0x94d049bb133111ebULL;
    h ^= splitmix64_next(s);
    return h;
}

// xoshiro256++ stream. Fixed algorithm so that seeded runs are reproducible
// across platforms and standard library versions (std:: distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return unit() < p; }

    // Fisher-Yates.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int s) {
        return (x << s) | (x >> (64 - s));
    }
    std::uint64_t state_[4];
};

}  // namespace permpat
