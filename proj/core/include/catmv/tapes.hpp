#pragma once

#include <cstdint>
#include <string_view>

#include "catmv/bit_tape.hpp"
#include "catmv/catalytic_state.hpp"

namespace catmv {

/// Initial contents of the catalytic registers (or raw tape).
enum class TapeMode : std::uint8_t { Seeded, Zeros, Max, Alternating };

/// Accepts "seeded", "zeros", "max", "alternating". Throws InputError.
TapeMode parse_tape_mode(std::string_view name);
const char *tape_mode_name(TapeMode mode) noexcept;

/**
 * Registers of dimension `dim`: Seeded draws uniform residues from `seed`,
 * Zeros is all 0, Max all m - 1, Alternating 0, m-1, 0, ... running through
 * x, y and z in order.
 */
CatalyticState make_state(const PrimeBasis &basis, std::size_t dim, TapeMode mode,
                          std::uint64_t seed = 0);

/// Raw bits: seeded random, all 0, all 1, or 0101... from bit 0.
BitTape make_bit_tape(std::size_t bits, TapeMode mode, std::uint64_t seed = 0);

} // namespace catmv
