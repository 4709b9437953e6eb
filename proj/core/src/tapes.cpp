#include "catmv/tapes.hpp"

#include <string>

#include "catmv/rng.hpp"

namespace catmv {

TapeMode parse_tape_mode(std::string_view name) {
    if (name == "seeded") return TapeMode::Seeded;
    if (name == "zeros") return TapeMode::Zeros;
    if (name == "max") return TapeMode::Max;
    if (name == "alternating") return TapeMode::Alternating;
    throw InputError("unknown tape mode '" + std::string(name) +
                     "' (expected seeded, zeros, max or alternating)");
}

const char *tape_mode_name(TapeMode mode) noexcept {
    switch (mode) {
    case TapeMode::Seeded: return "seeded";
    case TapeMode::Zeros: return "zeros";
    case TapeMode::Max: return "max";
    case TapeMode::Alternating: return "alternating";
    }
    return "?";
}

CatalyticState make_state(const PrimeBasis &basis, std::size_t dim, TapeMode mode,
                          std::uint64_t seed) {
    const auto m = basis.modulus();
    std::vector<std::vector<Coord>> regs(3, std::vector<Coord>(dim));
    SeededRng rng(seed);
    std::size_t k = 0;
    for (auto &reg : regs) {
        for (auto &c : reg) {
            switch (mode) {
            case TapeMode::Seeded: c = static_cast<Coord>(rng.below(m)); break;
            case TapeMode::Zeros: c = 0; break;
            case TapeMode::Max: c = static_cast<Coord>(m - 1); break;
            case TapeMode::Alternating: c = static_cast<Coord>(k % 2 ? m - 1 : 0); break;
            }
            ++k;
        }
    }
    return CatalyticState(basis, std::move(regs[0]), std::move(regs[1]), std::move(regs[2]));
}

BitTape make_bit_tape(std::size_t bits, TapeMode mode, std::uint64_t seed) {
    switch (mode) {
    case TapeMode::Seeded: return BitTape::random(bits, seed);
    case TapeMode::Zeros: return BitTape::filled(bits, false);
    case TapeMode::Max: return BitTape::filled(bits, true);
    case TapeMode::Alternating: {
        BitTape tape(bits);
        for (std::size_t i = 1; i < bits; i += 2) tape.set_bit(i, true);
        return tape;
    }
    }
    throw InputError("unknown tape mode");
}

} // namespace catmv
