#pragma once

#include <cstdint>
#include <random>

namespace catmv {

/**
 * All randomness in the project: a std::mt19937_64 stream (fully specified
 * by the standard) with rejection sampling for bounded draws, so sequences
 * are identical across standard libraries.
 */
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n). n must be nonzero.
    std::uint64_t below(std::uint64_t n) {
        if ((n & (n - 1)) == 0) return engine_() & (n - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool bit() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace catmv
