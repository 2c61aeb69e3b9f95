#pragma once

#include <cmath>
#include <cstdint>

namespace qmachine {

// Counter-based generator: every draw is a pure function of
// (seed, shard, sample_index), so sharded runs are deterministic regardless
// of scheduling. The mixer is the splitmix64 finalizer (Steele/Lea/Flood;
// Vigna's fixed-increment variant).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t shard = 0)
        : key_(mix(seed ^ mix(shard + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t bits_at(std::uint64_t index) const {
        return mix(key_ + (index + 1) * 0x9E3779B97F4A7C15ull);
    }

    // Uniform double in [0, 1), 53 bits of precision.
    double uniform_at(std::uint64_t index) const {
        return static_cast<double>(bits_at(index) >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

// Stateful convenience wrapper over CounterRng for sequential use.
class SequentialRng {
public:
    explicit SequentialRng(std::uint64_t seed, std::uint64_t shard = 0)
        : rng_(seed, shard) {}

    double uniform() { return rng_.uniform_at(next_++); }
    std::uint64_t bits() { return rng_.bits_at(next_++); }

    // Standard normal via Box-Muller (one value per pair of draws).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    CounterRng rng_;
    std::uint64_t next_ = 0;
};

} // namespace qmachine
