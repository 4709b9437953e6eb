#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "catmv/catalytic_state.hpp"
#include "catmv/mv_family.hpp"

namespace catmv {

/// One request to the child oracle: add gamma times a family vector of the
/// hidden child value into x (sigma = 0) or y (sigma = 1); ctrl picks u or v.
struct OracleRequest {
    std::uint64_t gamma = 0;
    bool ctrl = false;
    bool sigma = false;
};

/**
 * The oracle a one-level run talks to. For hidden values (a, b):
 *   sigma = 0:  x += gamma * (ctrl ? v_a : u_a)
 *   sigma = 1:  y += gamma * (ctrl ? v_b : u_b)
 * and nothing else changes. Registers are positional.
 */
class RegisterOracle {
public:
    virtual ~RegisterOracle() = default;
    virtual void apply(CatalyticState &state, const OracleRequest &request) = 0;
};

/// Implements the oracle contract directly from a family and known (a, b).
class FamilyOracle final : public RegisterOracle {
public:
    FamilyOracle(const MvFamily &family, std::uint64_t a, std::uint64_t b)
        : family_(&family), a_(a), b_(b) {}
    void apply(CatalyticState &state, const OracleRequest &request) override;

private:
    const MvFamily *family_;
    std::uint64_t a_, b_;
};

/// Which vectors the parent writes into z: u_s, v_s, or the packed bits of s.
enum class WFamily : std::uint8_t { U, V, Value };

/**
 * Placement of an ell-bit value inside a register: chunks of floor(log2 m)
 * bits, most significant first, one chunk per coordinate, in the last
 * `coords` coordinates.
 */
struct ValueLayout {
    unsigned ell = 0;
    unsigned chunk_bits = 0;
    std::size_t coords = 0;
    std::size_t first_coord = 0;
};

ValueLayout value_layout(std::size_t dim, std::uint64_t modulus, unsigned ell);

/// Packs `value` into a full-dimension vector (zeros outside the slot).
std::vector<Coord> pack_value(std::uint64_t value, const ValueLayout &layout, std::size_t dim);

/// Reads a value back from per-coordinate chunks (already differenced).
/// Throws InvariantViolation if a chunk does not fit in chunk_bits.
std::uint64_t unpack_value(std::span<const Coord> chunks, const ValueLayout &layout);

/// Streaming form of pack_value.
class ValueStream {
public:
    ValueStream(std::uint64_t value, const ValueLayout &layout, std::size_t dim)
        : value_(value), layout_(&layout), dim_(dim) {}
    std::size_t size() const noexcept { return dim_; }
    std::uint64_t operator()(std::size_t k) const;

private:
    std::uint64_t value_;
    const ValueLayout *layout_;
    std::size_t dim_;
};

/// alpha X^beta, the lowest-exponent nonzero term of
///   X^{g1 g2} - X^{(g1+1) g2} - X^{g1 (g2+1)} + X^{(g1+1)(g2+1)}, exponents mod p.
struct SentinelMonomial {
    int alpha = 0;           ///< in {-2, -1, 1, 2}
    std::uint64_t beta = 0;  ///< in Z_p
};

/// Throws InvariantViolation if every coefficient cancels (cannot happen).
SentinelMonomial sentinel_poly_monomial(std::uint64_t p, std::uint64_t g1, std::uint64_t g2);

struct PairedInnerProducts {
    std::uint64_t g1 = 0; ///< <x, v_a>
    std::uint64_t g2 = 0; ///< <y, v_b>
};

/// Computes <x, v_a> and <y, v_b> through four oracle calls and two swaps;
/// every register is back in place on return.
PairedInnerProducts paired_inner_products(CatalyticState &state, RegisterOracle &oracle);

/// Truth table of f : {0,1}^ell x {0,1}^ell -> {0,1}^ell, entry (r << ell) | s.
struct TruthTableView {
    std::span<const std::uint32_t> entries;
    unsigned ell = 0;

    std::uint32_t operator()(std::uint64_t r, std::uint64_t s) const {
        return entries[(r << ell) | s];
    }
};

struct OneLevelOptions {
    /// Precompute <x, v_r> and <y, v_s> for all r, s per bit assignment.
    /// Faster, but charges 2^{ell+1} residues of free space.
    bool precomputed_tables = false;
};

/// Optional instrumentation of the main loop.
struct OneLevelTrace {
    PairedInnerProducts inner;
    std::vector<SentinelMonomial> sentinels;
    /// For each (r, s) at index (r << ell) | s: sum over bit assignments that
    /// hit the sentinel of (-1)^{sum b_i + c_i}, as an exact integer.
    std::vector<std::int64_t> signed_hits;
    std::uint64_t oracle_calls = 0;
};

/// Oracle calls made by one run: 4 for the inner products plus 4 per each of
/// the 4^t bit assignments.
std::uint64_t one_level_oracle_calls(std::size_t t) noexcept;

/**
 * z += gamma_star * w_{f(a, b)} for the (a, b) hidden behind `oracle`,
 * leaving x and y as they were. `value_layout` is used only for
 * WFamily::Value.
 *
 * Throws InputError on dimension or table-size mismatch.
 */
void one_level_update(const TruthTableView &f, std::uint64_t gamma_star, WFamily wfam,
                      CatalyticState &state, RegisterOracle &oracle, const MvFamily &family,
                      const ValueLayout &value_layout = {}, const OneLevelOptions &options = {},
                      OneLevelTrace *trace = nullptr);

} // namespace catmv
