#include "catmv/bit_tape.hpp"

#include "catmv/rng.hpp"

namespace catmv {

BitTapeLayout register_tape_layout(std::uint64_t modulus, std::size_t dim) {
    const unsigned width = bits_for(modulus) + bits_for(dim) + 2;
    if (width > 63) throw InputError("bit tape slot width exceeds 63 bits");
    return {modulus, 3 * dim, width};
}

BitTape BitTape::random(std::size_t bits, std::uint64_t seed) {
    BitTape tape(bits);
    SeededRng rng(seed);
    for (auto &w : tape.words_) w = rng.next();
    if (bits % 64 != 0 && !tape.words_.empty())
        tape.words_.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    return tape;
}

BitTape BitTape::filled(std::size_t bits, bool value) {
    BitTape tape(bits);
    for (std::size_t i = 0; value && i < bits; ++i) tape.set_bit(i, true);
    return tape;
}

void BitTape::set_bit(std::size_t i, bool v) {
    const auto mask = std::uint64_t{1} << (i % 64);
    if (v)
        words_[i / 64] |= mask;
    else
        words_[i / 64] &= ~mask;
}

std::uint64_t BitTape::read(std::size_t pos, unsigned width) const {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(bit(pos + b)) << b;
    return v;
}

void BitTape::write(std::size_t pos, unsigned width, std::uint64_t value) {
    for (unsigned b = 0; b < width; ++b) set_bit(pos + b, (value >> b) & 1);
}

TapeEncoding encode_tape(const BitTape &tape, const BitTapeLayout &layout) {
    if (tape.size() != layout.total_bits())
        throw InputError("tape has " + std::to_string(tape.size()) + " bits, layout needs " +
                         std::to_string(layout.total_bits()));
    const auto span = layout.slot_span();
    const auto mask = span - 1;
    const auto bound = layout.valid_bound();
    std::vector<std::uint64_t> raw(layout.slots);
    for (std::size_t i = 0; i < layout.slots; ++i)
        raw[i] = tape.read(i * layout.slot_bits, layout.slot_bits);

    for (std::uint64_t offset = 0; offset < span; ++offset) {
        bool ok = true;
        for (const auto s : raw)
            if (((s + offset) & mask) >= bound) {
                ok = false;
                break;
            }
        if (!ok) continue;
        TapeEncoding enc{offset, {}, {}};
        enc.values.reserve(raw.size());
        enc.quotients.reserve(raw.size());
        for (const auto s : raw) {
            const auto shifted = (s + offset) & mask;
            enc.values.push_back(static_cast<Coord>(shifted % layout.modulus));
            enc.quotients.push_back(shifted / layout.modulus);
        }
        return enc;
    }
    throw InvariantViolation("encode_tape: no valid offset for slot width " +
                             std::to_string(layout.slot_bits));
}

BitTape decode_tape(const TapeEncoding &encoding, const BitTapeLayout &layout) {
    if (encoding.values.size() != layout.slots || encoding.quotients.size() != layout.slots)
        throw InputError("decode_tape: encoding does not match layout");
    const auto mask = layout.slot_span() - 1;
    BitTape tape(layout.total_bits());
    for (std::size_t i = 0; i < layout.slots; ++i) {
        if (encoding.values[i] >= layout.modulus)
            throw InputError("decode_tape: value not reduced mod m");
        const auto shifted = encoding.quotients[i] * layout.modulus + encoding.values[i];
        tape.write(i * layout.slot_bits, layout.slot_bits, (shifted - encoding.offset) & mask);
    }
    return tape;
}

CatalyticState state_from_encoding(const TapeEncoding &encoding, const PrimeBasis &basis) {
    if (encoding.values.size() % 3 != 0 || encoding.values.empty())
        throw InputError("register encoding must hold 3d values");
    const auto d = encoding.values.size() / 3;
    auto it = encoding.values.begin();
    std::vector<Coord> x(it, it + d), y(it + d, it + 2 * d), z(it + 2 * d, it + 3 * d);
    return CatalyticState(basis, std::move(x), std::move(y), std::move(z));
}

void store_registers(const CatalyticState &state, TapeEncoding &encoding) {
    const auto d = state.dim();
    if (encoding.values.size() != 3 * d) throw InputError("store_registers: size mismatch");
    std::size_t k = 0;
    for (const auto r : {Register::X, Register::Y, Register::Z})
        for (const auto c : state.reg(r)) encoding.values[k++] = c;
}

} // namespace catmv
