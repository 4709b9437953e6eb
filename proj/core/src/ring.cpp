#include "catmv/ring.hpp"

namespace catmv {

RingElement Ring::random(SeededRng &rng) const {
    RingElement out(length);
    for (auto &c : out) c = static_cast<Coord>(rng.below(modulus));
    return out;
}

bool Ring::contains(const RingElement &a) const noexcept {
    if (a.size() != length) return false;
    for (auto c : a)
        if (c >= modulus) return false;
    return true;
}

void Ring::add_scaled(RingElement &target, std::uint64_t scale, const RingElement &a) const {
    if (target.size() != length || a.size() != length)
        throw InputError("ring: element length mismatch");
    scale %= modulus;
    for (std::size_t k = 0; k < length; ++k)
        target[k] = static_cast<Coord>((target[k] + mul_mod(scale, a[k], modulus)) % modulus);
}

RingElement Ring::add(const RingElement &a, const RingElement &b) const {
    RingElement out = a;
    add_scaled(out, 1, b);
    return out;
}

RingElement Ring::sub(const RingElement &a, const RingElement &b) const {
    RingElement out = a;
    add_scaled(out, modulus - 1, b);
    return out;
}

RingElement Ring::scaled(std::uint64_t scale, const RingElement &a) const {
    RingElement out = zero();
    add_scaled(out, scale, a);
    return out;
}

} // namespace catmv
