#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catmv/errors.hpp"
#include "catmv/modmath.hpp"
#include "catmv/space_ledger.hpp"

namespace catmv {

using Coord = std::uint32_t;

enum class Register : std::uint8_t { X = 0, Y = 1, Z = 2 };

const char *register_name(Register r) noexcept;

/// Anything that yields a fixed number of Z_m coordinates by index.
template <typename S>
concept CoordinateSource = requires(const S &s, std::size_t k) {
    { s.size() } -> std::convertible_to<std::size_t>;
    { s(k) } -> std::convertible_to<std::uint64_t>;
};

/// Adapts a materialized vector to CoordinateSource.
struct SpanSource {
    std::span<const Coord> coords;
    std::size_t size() const noexcept { return coords.size(); }
    std::uint64_t operator()(std::size_t k) const { return coords[k]; }
};

struct RestoreReport {
    bool restored = true;
    std::optional<Register> reg;          ///< first register that differs
    std::size_t coordinate = 0;           ///< first differing coordinate in it
    Coord expected = 0;
    Coord actual = 0;

    explicit operator bool() const noexcept { return restored; }
    std::string describe() const;
};

/**
 * Three Z_m^d registers x, y, z living on the catalytic tape, plus the
 * snapshot taken at construction, the oracle-call counter and the free-space
 * ledger of the execution that owns them.
 *
 * Registers are addressed by position: swap_registers exchanges contents, so
 * "x" always means whatever currently sits in the first slot.
 */
class CatalyticState {
public:
    /// All-zero registers.
    CatalyticState(PrimeBasis basis, std::size_t dim);
    /// Registers taken from `x`, `y`, `z`; throws InputError unless each has
    /// length dim and entries below m.
    CatalyticState(PrimeBasis basis, std::vector<Coord> x, std::vector<Coord> y,
                   std::vector<Coord> z);

    const PrimeBasis &basis() const noexcept { return basis_; }
    std::uint64_t modulus() const noexcept { return basis_.modulus(); }
    std::size_t dim() const noexcept { return regs_[0].size(); }

    std::span<const Coord> reg(Register r) const noexcept { return regs_[idx(r)]; }
    std::span<Coord> reg_mut(Register r) noexcept { return regs_[idx(r)]; }

    /// target += gamma * source, entrywise mod m. Throws InputError on a
    /// length mismatch.
    template <CoordinateSource S>
    void add_scaled(Register target, std::uint64_t gamma, const S &source);

    /// Exchanges two registers. Charges pointer-width scratch to the ledger.
    void swap_registers(Register a, Register b);

    /// Bit-exact comparison of the named registers against the snapshot.
    RestoreReport assert_restored(std::span<const Register> which) const;
    RestoreReport assert_restored_all() const;

    /// Replaces the snapshot by the current contents.
    void retake_snapshot();
    std::span<const Coord> snapshot(Register r) const noexcept { return snapshot_[idx(r)]; }

    std::uint64_t oracle_calls() const noexcept { return oracle_calls_; }
    void count_oracle_call() noexcept { ++oracle_calls_; }

    SpaceLedger &ledger() noexcept { return ledger_; }
    const SpaceLedger &ledger() const noexcept { return ledger_; }

    /// Diagnostic dump: header line then one register per line, decimal.
    void write_snapshot(std::ostream &out) const;
    /// Inverse of write_snapshot. Throws ParseError.
    static CatalyticState read_snapshot(std::istream &in);

private:
    static constexpr std::size_t idx(Register r) noexcept { return static_cast<std::size_t>(r); }
    void validate() const;

    PrimeBasis basis_;
    std::array<std::vector<Coord>, 3> regs_;
    std::array<std::vector<Coord>, 3> snapshot_;
    std::uint64_t oracle_calls_ = 0;
    SpaceLedger ledger_;
};

/// Inner product <reg, source> mod m.
template <CoordinateSource S>
std::uint64_t dot(std::span<const Coord> reg, const S &source, std::uint64_t m) {
    if (reg.size() != source.size())
        throw InputError("dot: length mismatch");
    // Each term is below m^2 < 2^64; fold before the accumulator can wrap.
    const std::uint64_t bound = (m - 1) * (m - 1);
    const std::uint64_t limit = bound == 0 ? UINT64_MAX : UINT64_MAX - bound;
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        acc += static_cast<std::uint64_t>(reg[k]) * source(k);
        if (acc > limit) acc %= m;
    }
    return acc % m;
}

template <CoordinateSource S>
void CatalyticState::add_scaled(Register target, std::uint64_t gamma, const S &source) {
    auto &r = regs_[idx(target)];
    if (source.size() != r.size())
        throw InputError("add_scaled: source has " + std::to_string(source.size()) +
                         " coordinates, register has " + std::to_string(r.size()));
    const auto m = modulus();
    gamma %= m;
    auto pointer = ledger_.open("add_scaled.pointer", bits_for(r.size()) + basis_.element_bits());
    if (gamma == 0) return;
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = static_cast<Coord>((r[k] + gamma * source(k)) % m);
}

} // namespace catmv
