#pragma once

#include <cstdint>
#include <vector>

#include "catmv/catalytic_state.hpp"

namespace catmv {

/// How a raw bit tape is cut into fixed-width slots, one per Z_m element.
struct BitTapeLayout {
    std::uint64_t modulus = 0;
    std::size_t slots = 0;      ///< 3d for the three registers
    unsigned slot_bits = 0;     ///< ceil(log2 m) + ceil(log2 d) + 2

    std::uint64_t slot_span() const noexcept { return std::uint64_t{1} << slot_bits; }
    /// Slot integers below this bound (after the offset) are valid encodings.
    std::uint64_t valid_bound() const noexcept { return slot_span() - slot_span() % modulus; }
    std::size_t total_bits() const noexcept { return slots * slot_bits; }
};

/// Layout for three registers of dimension `dim` over Z_m.
BitTapeLayout register_tape_layout(std::uint64_t modulus, std::size_t dim);

/// A raw catalytic tape: arbitrary bits with no promise of validity.
class BitTape {
public:
    explicit BitTape(std::size_t bits) : bits_(bits), words_((bits + 63) / 64) {}

    static BitTape random(std::size_t bits, std::uint64_t seed);
    static BitTape filled(std::size_t bits, bool value);

    std::size_t size() const noexcept { return bits_; }
    bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    void set_bit(std::size_t i, bool v);

    /// Reads/writes `width` <= 64 bits starting at `pos`, least significant first.
    std::uint64_t read(std::size_t pos, unsigned width) const;
    void write(std::size_t pos, unsigned width, std::uint64_t value);

    friend bool operator==(const BitTape &, const BitTape &) = default;

private:
    std::size_t bits_;
    std::vector<std::uint64_t> words_;
};

/**
 * Register view of a bit tape. Slot i (raw integer s_i) plus the offset,
 * taken mod 2^W, lies below m * floor(2^W / m); its residue mod m is the
 * register entry and its quotient stays behind on the tape.
 */
struct TapeEncoding {
    std::uint64_t offset = 0;
    std::vector<Coord> values;
    std::vector<std::uint64_t> quotients;
};

/// Finds the smallest valid offset by linear search. Throws
/// InvariantViolation if none exists (impossible for register_tape_layout).
TapeEncoding encode_tape(const BitTape &tape, const BitTapeLayout &layout);

/// Writes the (possibly modified) register view back with the stored offset
/// subtracted. Inverse of encode_tape bit for bit when values are unchanged.
BitTape decode_tape(const TapeEncoding &encoding, const BitTapeLayout &layout);

/// Splits a 3d-value encoding into a CatalyticState (x, y, z in order).
CatalyticState state_from_encoding(const TapeEncoding &encoding, const PrimeBasis &basis);
/// Copies the current registers of `state` back into `encoding.values`.
void store_registers(const CatalyticState &state, TapeEncoding &encoding);

} // namespace catmv
