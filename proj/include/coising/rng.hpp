#pragma once

#include <cstdint>
#include <vector>

// Self-contained PRNG so seeded runs are byte-identical across platforms and
// standard-library versions (std:: distributions are implementation-defined).

namespace coising {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire rejection method.
        std::uint64_t x = next();
        __uint128_t m = (__uint128_t)x * bound;
        std::uint64_t low = (std::uint64_t)m;
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = next();
                m = (__uint128_t)x * bound;
                low = (std::uint64_t)m;
            }
        }
        return (std::uint64_t)(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double real01() { return (double)(next() >> 11) * 0x1.0p-53; }

    /// Random sign, +1 or -1.
    int sign() { return (next() >> 63) ? 1 : -1; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = (std::size_t)below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

/// Deterministic sub-stream seed for (seed, stream index) pairs, so parallel
/// tasks draw from independent streams regardless of execution order.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xa0761d6478bd642full + stream * 0xe7037ed1a0b428dbull);
    return splitmix64(s);
}

} // namespace coising
