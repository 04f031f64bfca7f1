#pragma once

#include <cstdint>

namespace fqrank {

// SplitMix64 finalizer (Steele/Lea/Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small deterministic generator used for all sampling. Cheap to seed, so
/// every Monte Carlo trial gets its own stream derived from (seed, trial)
/// and results do not depend on how trials are partitioned across workers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Unbiased draw from [0, bound) by rejection.
    std::uint32_t below(std::uint32_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r = next();
        while (r >= limit) r = next();
        return static_cast<std::uint32_t>(r % bound);
    }

private:
    std::uint64_t state_;
};

/// Stream seed for trial `t` of a run seeded with `seed`. Depends only on
/// (seed, t), never on call order.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t t) {
    return mix64(seed ^ mix64(t + 0x632be59bd9b4e019ULL));
}

}  // namespace fqrank
