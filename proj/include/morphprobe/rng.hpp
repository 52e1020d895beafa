#ifndef MORPHPROBE_RNG_HPP
#define MORPHPROBE_RNG_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace morphprobe {

// Deterministic PRNG for all sampling: xoshiro256** seeded from splitmix64.
// The generator, the bounded draw, and the shuffle below are pinned by golden
// tests so a seed produces the same splits on every platform and in any
// reimplementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
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

    // Uniform draw in [0, bound) by rejection: resample while the raw draw
    // falls in the short leading residue class, then reduce.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t min = (0 - bound) % bound;
        std::uint64_t r = next();
        while (r < min) r = next();
        return r % bound;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Fisher-Yates from the last index down. Callers must pass items in canonical
// order; the permutation is then a pure function of the seed.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
        std::swap(items[i], items[j]);
    }
}

}  // namespace morphprobe

#endif
