#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catmv/catalytic_state.hpp"
#include "catmv/combinatorics.hpp"
#include "catmv/modmath.hpp"
#include "catmv/multilinear.hpp"

namespace catmv {

/**
 * Parameters of the Grolmusz-style family: sets of size w in a universe of
 * h_sets elements, with the weight tested modulo p_i^{e_i}.
 */
struct MvParams {
    PrimeBasis basis;
    unsigned w = 0;
    unsigned h_sets = 0;
    std::vector<unsigned> exponents;   ///< e_i >= 1
    unsigned max_degree = 0;           ///< D = max_i p_i^{e_i} - 1
    unsigned degree_cap = 0;           ///< monomials of size <= degree_cap are coordinates
    std::uint64_t family_size = 0;     ///< N = C(h_sets, w)
    std::size_t dim = 0;               ///< monomial count + 1 (flip coordinate)
    unsigned target_ell = 0;           ///< N >= 2^target_ell

    /// Throws InvariantViolation if any relation between the fields fails.
    void validate() const;
    std::string describe() const;
};

/**
 * Scans w = 1, 2, ... and returns the first parameter set whose family has
 * at least 2^ell members: h_sets = ceil(w^{1+1/t}), e_i minimal with
 * p_i^{e_i} > (m w)^{1/t} / p_i, degree cap min(h_sets, floor((m w)^{1/t})).
 *
 * Throws InputError for ell == 0 and NotFoundError if no w <= max_w fits in
 * a 63-element universe with dimension <= max_dim.
 */
MvParams select_params(unsigned ell, const PrimeBasis &basis, unsigned max_w = 63,
                       std::size_t max_dim = std::size_t{1} << 22);

/// The same formulas for a fixed w (no search); target_ell is left at 0.
MvParams params_for_weight(const PrimeBasis &basis, unsigned w);

/// Degree cap of the dimension formula, floor((m w)^{1/t}), computed exactly.
std::uint64_t dimension_degree_bound(const PrimeBasis &basis, unsigned w);

/// CRT-combined weight polynomial over Z_m: zero at weight w, canonical
/// below w. Coefficients are combined monomial by monomial.
MultilinearPoly combined_poly(const MvParams &params);

/// (u || 1, -v || 1): turns "inner product 0 on the diagonal" into "1".
std::pair<std::vector<Coord>, std::vector<Coord>> flip_transform(std::span<const Coord> u,
                                                                 std::span<const Coord> v,
                                                                 std::uint64_t modulus);

class MvFamily;

enum class FamilySide : std::uint8_t { U, V };

/// Per-coordinate generator for one family vector (post-flip). Cheap to copy.
class FamilyVectorStream {
public:
    std::size_t size() const noexcept;
    std::uint64_t operator()(std::size_t k) const;
    SubsetMask set() const noexcept { return set_; }

private:
    friend class MvFamily;
    FamilyVectorStream(const MvFamily *family, SubsetMask set, FamilySide side)
        : family_(family), set_(set), side_(side) {}
    const MvFamily *family_;
    SubsetMask set_;
    FamilySide side_;
};

/**
 * Matching-vector family over Z_m^d built from combined_poly: u_i holds the
 * coefficients of f restricted to the set T_i, v_j the 0/1 evaluations of
 * every monomial at the indicator of T_j, then the flip coordinate.
 *
 * After the flip <u_i, v_j> is 1 exactly on the diagonal and lies in {0, 1}
 * modulo every p_k. Immutable once built.
 */
class MvFamily {
public:
    explicit MvFamily(MvParams params);

    const MvParams &params() const noexcept { return params_; }
    const PrimeBasis &basis() const noexcept { return params_.basis; }
    std::uint64_t modulus() const noexcept { return params_.basis.modulus(); }
    std::size_t dim() const noexcept { return params_.dim; }
    std::uint64_t size() const noexcept { return params_.family_size; }

    const MultilinearPoly &combined() const noexcept { return combined_; }
    std::span<const SubsetMask> monomials() const noexcept { return monomials_; }

    /// T_i via the combinatorial number system. Throws InputError past N.
    SubsetMask set_of(std::uint64_t index) const;

    FamilyVectorStream u_stream(std::uint64_t i) const;
    FamilyVectorStream v_stream(std::uint64_t j) const;
    FamilyVectorStream stream(FamilySide side, std::uint64_t index) const;

    std::vector<Coord> u_vector(std::uint64_t i) const;
    std::vector<Coord> v_vector(std::uint64_t j) const;

    /// Vectors before the flip (dimension d - 1); <u_i, v_j> = f_{T_i}(1_{T_j}).
    std::vector<Coord> raw_u_vector(std::uint64_t i) const;
    std::vector<Coord> raw_v_vector(std::uint64_t j) const;

    /// Diagnostic export: a params header, then one "u <i> ..." or "v <j> ..."
    /// line per vector for the first `count` indices.
    void write(std::ostream &out, std::uint64_t count) const;

private:
    friend class FamilyVectorStream;
    MvParams params_;
    MultilinearPoly combined_;
    std::vector<SubsetMask> monomials_;
    std::vector<Coord> coefficients_; // aligned with monomials_
    std::vector<SubsetMask> sets_;    // T_i for the first set_cache_limit indices
    static constexpr std::uint64_t set_cache_limit = std::uint64_t{1} << 16;
};

inline std::size_t FamilyVectorStream::size() const noexcept { return family_->dim(); }

inline std::uint64_t FamilyVectorStream::operator()(std::size_t k) const {
    const auto &monos = family_->monomials_;
    if (k == monos.size()) return 1; // flip coordinate
    if ((monos[k] & ~set_) != 0) return 0;
    return side_ == FamilySide::U ? family_->coefficients_[k] : family_->modulus() - 1;
}

/// Explicit u/v vectors, e.g. for checking a family that was tampered with.
struct MaterializedFamily {
    PrimeBasis basis;
    std::vector<std::vector<Coord>> u;
    std::vector<std::vector<Coord>> v;
};

MaterializedFamily materialize(const MvFamily &family, std::uint64_t count);

enum class VerifyMode : std::uint8_t { Exhaustive, Sampled };

struct FamilyViolation {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    std::uint64_t inner_product = 0;
    std::string reason;
};

struct FamilyReport {
    bool pass = true;
    std::uint64_t pairs_checked = 0;
    std::optional<FamilyViolation> violation;

    explicit operator bool() const noexcept { return pass; }
    std::string describe() const;
};

/// Checks both matching-vector axioms; sampled mode draws `samples` pairs
/// (plus every diagonal pair) from `seed`.
FamilyReport verify_family(const MaterializedFamily &family,
                           VerifyMode mode = VerifyMode::Exhaustive,
                           std::uint64_t samples = 0, std::uint64_t seed = 1);
FamilyReport verify_family(const MvFamily &family, VerifyMode mode = VerifyMode::Exhaustive,
                           std::uint64_t samples = 0, std::uint64_t seed = 1);

} // namespace catmv
