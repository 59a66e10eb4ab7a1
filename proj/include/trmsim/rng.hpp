#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "trmsim/hash.hpp"

namespace trmsim {

// Seeded stream with fully pinned draw semantics. mt19937_64 output is
// specified by the standard and the derived draws below avoid the
// implementation-defined std distributions, so traces are stable across
// toolchains and frozen test seeds stay valid.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent named substream of a master seed.
    static Rng stream(std::uint64_t seed, std::string_view purpose) {
        HashWriter w;
        w.u64(seed).str(purpose);
        Bytes32 h = w.finish();
        std::uint64_t s = 0;
        for (int i = 0; i < 8; ++i) s |= static_cast<std::uint64_t>(h[i]) << (8 * i);
        return Rng(s);
    }

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive.
    std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        if (span == 0) return eng_();  // full range
        const auto wide = static_cast<unsigned __int128>(eng_()) * span;
        return lo + static_cast<std::uint64_t>(wide >> 64);
    }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(uniform_u64(0, n - 1)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace trmsim
