#pragma once

#include <cstdint>
#include <vector>

namespace fragnet {

// splitmix64: used to expand a 64-bit seed into generator state and to
// derive independent per-replica seeds from a master seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// xoshiro256** (Blackman/Vigna). Chosen over std engines because its output
// sequence is fixed by the algorithm itself, not by the standard library
// implementation, so ensembles reproduce across platforms and languages.
// Identifier recorded in output metadata: "xoshiro256**".
class Rng {
  public:
    static constexpr const char* id = "xoshiro256**";

    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : state_) s = sm.next();
    }

    std::uint64_t next_u64() {
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

    // Unbiased integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Fisher-Yates; the visit order is fixed so shuffles are reproducible.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Deterministic seed schedule for ensemble replicas.
inline std::vector<std::uint64_t> derive_seeds(std::uint64_t master, int count) {
    SplitMix64 sm(master);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
    for (auto& s : seeds) s = sm.next();
    return seeds;
}

}  // namespace fragnet
