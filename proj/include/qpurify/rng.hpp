#pragma once

#include <cstdint>
#include <string_view>

namespace qpurify {

// SplitMix64: tiny, fast, statistically solid generator. Every stochastic
// routine in this project derives its draws from one of these so that results
// depend only on (seed, draw index), never on library version or scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from (base, salt). Used to give each
// Monte Carlo trial / grid point / measurement setting its own substream, so
// results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (salt + 0x243f6a8885a308d3ULL)));
    g.next();
    return g.next();
}

inline SplitMix64 substream(std::uint64_t base, std::uint64_t salt) {
    return SplitMix64(derive_seed(base, salt));
}

// FNV-1a, for folding string labels into seed derivations.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace qpurify
