#pragma once

#include <cstdint>

#include "fluxlab/vec.hpp"

namespace fluxlab {

// Counter-based pseudo-random generator built on the SplitMix64 output
// function.  The i-th output of a stream is a pure function of
// (stream key, i), so independent streams can be handed to worker threads
// and every Monte-Carlo result is reproducible regardless of scheduling or
// worker count.  Quality is good enough for sampling (SplitMix64 passes
// BigCrush); we do not need cryptographic strength here.
class CounterRng {
  public:
    // Dedicated substream for one trajectory / sample index under a user seed.
    static CounterRng substream(std::uint64_t seed, std::uint64_t index) {
        // Scramble (seed, index) into a stream key; two mix rounds decorrelate
        // neighbouring indices.
        std::uint64_t key = mix(seed ^ 0x9e3779b97f4a7c15ull);
        key = mix(key + index * 0xbf58476d1ce4e5b9ull + 1);
        return CounterRng(key);
    }

    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1] (safe as a log() argument).
    double next_double_pos() { return ((next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller.  Always consumes exactly two uniforms
    // and caches nothing, so the draw count per call is fixed.
    double next_normal() {
        const double u1 = next_double_pos();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Vec3 next_normal3() {
        const double a = next_normal();
        const double b = next_normal();
        const double c = next_normal();
        return {a, b, c};
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fluxlab
