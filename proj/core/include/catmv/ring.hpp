#pragma once

#include <cstdint>
#include <vector>

#include "catmv/catalytic_state.hpp"
#include "catmv/rng.hpp"

namespace catmv {

using RingElement = std::vector<Coord>;

/// Z_n^length with entrywise operations; covers both Z_m^{2d} and F_q^ell.
struct Ring {
    std::uint64_t modulus = 0;
    std::size_t length = 0;

    RingElement zero() const { return RingElement(length, 0); }
    RingElement random(SeededRng &rng) const;
    bool contains(const RingElement &a) const noexcept;

    /// target += scale * a. Throws InputError on a length mismatch.
    void add_scaled(RingElement &target, std::uint64_t scale, const RingElement &a) const;
    RingElement add(const RingElement &a, const RingElement &b) const;
    RingElement sub(const RingElement &a, const RingElement &b) const;
    RingElement scaled(std::uint64_t scale, const RingElement &a) const;

    friend bool operator==(const Ring &, const Ring &) = default;
};

} // namespace catmv
