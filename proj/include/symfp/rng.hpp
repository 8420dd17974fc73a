#pragma once

#include <cstdint>
#include <random>

namespace symfp {

/// Identifies an independent family of Monte Carlo streams.
struct SamplerConfig {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

/// splitmix64 finalizer (Steele, Lea, Flood); a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of trial `trial` in stream `cfg`:
///   mix64(mix64(mix64(master_seed) ^ stream_id) ^ trial).
/// Depends on nothing else, so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(const SamplerConfig& cfg, std::uint64_t trial) noexcept {
    return mix64(mix64(mix64(cfg.master_seed) ^ cfg.stream_id) ^ trial);
}

/// Per-trial generator. Draw routines are written out here (not via
/// <random> distributions) so the bit stream is identical on every platform.
class TrialRng {
public:
    TrialRng(const SamplerConfig& cfg, std::uint64_t trial) : engine_(derive_seed(cfg, trial)) {}
    explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on {-1, +1}; consumes one bit of a cached 64-bit word.
    int sign() {
        if (bits_left_ == 0) {
            bits_ = engine_();
            bits_left_ = 64;
        }
        const int s = (bits_ & 1) ? 1 : -1;
        bits_ >>= 1;
        --bits_left_;
        return s;
    }

    /// Uniform on [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        // [2^64 mod bound, 2^64) holds a multiple of `bound` values.
        const std::uint64_t reject_below = (std::uint64_t{0} - bound) % bound;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= reject_below) return x % bound;
        }
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
    std::uint64_t bits_ = 0;
    int bits_left_ = 0;
};

}  // namespace symfp
