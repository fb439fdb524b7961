#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace powss {

// All sampling goes through an explicitly passed generator; no global state.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits. std::uniform_real_distribution
// is implementation-defined, so experiments would not be bit-reproducible
// across standard libraries; this mapping is.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(double p, Rng& rng) { return uniform01(rng) < p; }

// Draw an index from an unnormalized discrete distribution.
inline int sample_discrete(std::span<const double> probs, Rng& rng) {
    double total = 0.0;
    for (double p : probs) total += p;
    double u = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::uint64_t v, std::uint64_t h = kFnvOffset) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= kFnvPrime;
    }
    return h;
}

}  // namespace powss
