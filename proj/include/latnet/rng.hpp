#pragma once

#include <cstdint>
#include <random>

namespace latnet {

// SplitMix64. Used for seed mixing only, never as a simulation stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Decorrelated seed for stream k (trial index, thread index, ...) derived
// from a user-facing base seed.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k) {
    return splitmix64(base ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
}

// Deterministic random stream with fixed draw accounting: every helper below
// consumes exactly one engine call. Distributions are hand-rolled because
// std::uniform_*_distribution is not bit-stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Multiply-shift reduction; exact for
    // n dividing 2^64, bias < n / 2^64 otherwise.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // True with probability p. p = 0 never fires, p = 1 always does.
    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace latnet
