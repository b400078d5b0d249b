#pragma once

#include <cstdint>
#include <limits>

namespace epsbias {

// splitmix64: the output of step i from initial state s0 is
// mix(s0 + (i+1)*GAMMA), so streams support O(1) random access. The mix
// function doubles as the per-trial seed derivation for experiments:
// trial_seed(master, i) = mix(master + (i+1)*GAMMA). Pinned test vectors
// guard both (seed 0 -> e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f).
inline constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_mix(master_seed + (index + 1) * kSplitmixGamma);
}

// Deterministic, platform-independent PRNG. std::uniform_int_distribution is
// implementation-defined, so bounded draws are done here by rejection.
class Rng {
  public:
    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kSplitmixGamma;
        return splitmix64_mix(state_);
    }

    // Uniform in [0, bound), bound >= 1; unbiased via rejection.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t zone = std::numeric_limits<std::uint64_t>::max() -
                                   std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next();
        while (x >= zone) x = next();
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 bits.
    constexpr double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace epsbias
