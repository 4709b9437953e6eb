#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "catmv/mv_family.hpp"
#include "catmv/one_level.hpp"
#include "catmv/ring.hpp"

namespace catmv {

/// Reconstruction state handed from GetState to every AnswerAndReconstruct.
struct CirState {
    std::vector<std::uint64_t> fields;
    std::uint64_t bits = 0; ///< declared size of the state in free space
};

class CirScheme;

/// O_{a,b}: target += gamma * DetQuery(sigma ? b : a, j, mu).
class CirOracle {
public:
    CirOracle(const CirScheme &scheme, std::uint64_t a, std::uint64_t b)
        : scheme_(&scheme), a_(a), b_(b) {}

    void apply(RingElement &target, bool sigma, bool mu, std::uint64_t gamma, std::uint64_t j);
    std::uint64_t calls() const noexcept { return calls_; }

private:
    const CirScheme *scheme_;
    std::uint64_t a_, b_;
    std::uint64_t calls_ = 0;
};

/**
 * A catalytic information retrieval scheme over a ring R = Z_n^k with s
 * servers and a database of n_DB^2 records indexed by a || b.
 */
class CirScheme {
public:
    virtual ~CirScheme() = default;

    virtual const Ring &ring() const noexcept = 0;
    virtual std::uint64_t servers() const noexcept = 0;
    /// n_DB; the database has n_DB^2 records.
    virtual std::uint64_t index_count() const noexcept = 0;

    virtual RingElement det_query(std::uint64_t a, std::uint64_t j, bool mu) const = 0;
    /// May modify x and y through the oracle but must restore them.
    virtual CirState get_state(RingElement &x, RingElement &y, CirOracle &oracle) const = 0;
    virtual RingElement answer_and_reconstruct(std::span<const RingElement> db,
                                               const CirState &state, std::uint64_t j,
                                               const RingElement &query,
                                               const RingElement &query2) const = 0;
};

/**
 * Runs the correctness equation: GetState with O_{a,b}, then the sum over
 * servers of AnswerAndReconstruct on x + DetQuery(a, j, 0), y + DetQuery(b, j, 1).
 * x and y are left unchanged. Throws InputError on malformed input and
 * InvariantViolation if GetState did not restore its registers.
 */
RingElement cir_retrieve(const CirScheme &scheme, std::span<const RingElement> db,
                         std::uint64_t a, std::uint64_t b, RingElement x, RingElement y,
                         CirState *state_out = nullptr);

/// The generic one-level step built from a scheme: z += DB_{a || b} using
/// only additions of DetQuery vectors into x and y, which are restored.
void cir_one_level(const CirScheme &scheme, std::span<const RingElement> db, std::uint64_t a,
                   std::uint64_t b, RingElement &x, RingElement &y, RingElement &z);

/// Matching-vector scheme: R = Z_m^{2d}, 4^t servers indexed by (b, c) bits.
class MvCir final : public CirScheme {
public:
    /// `ell` fixes n_DB = 2^ell; the family must have at least that many members.
    MvCir(const MvFamily &family, unsigned ell);

    const Ring &ring() const noexcept override { return ring_; }
    std::uint64_t servers() const noexcept override { return std::uint64_t{1} << (2 * t_); }
    std::uint64_t index_count() const noexcept override { return std::uint64_t{1} << ell_; }

    RingElement det_query(std::uint64_t a, std::uint64_t j, bool mu) const override;
    /// fields: g1, g2, alpha_1..alpha_t (lifted mod m), beta_1..beta_t.
    CirState get_state(RingElement &x, RingElement &y, CirOracle &oracle) const override;
    RingElement answer_and_reconstruct(std::span<const RingElement> db, const CirState &state,
                                       std::uint64_t j, const RingElement &query,
                                       const RingElement &query2) const override;

    /// Embeds a d-dimensional vector as (w || 0).
    RingElement embed(std::span<const Coord> w) const;
    const MvFamily &family() const noexcept { return *family_; }

private:
    const MvFamily *family_;
    unsigned ell_;
    std::size_t t_;
    std::size_t d_;
    Ring ring_;
};

/// Prime field F_q with an element of order exactly s, 2 ell < s < q.
struct CmField {
    std::uint64_t q = 0;
    std::uint64_t s = 0;
    std::uint64_t omega = 0;
};

/// Smallest prime q >= 2 ell + 2 with a divisor s of q - 1 above 2 ell;
/// s is the least such divisor and omega the least element of order s.
/// Throws NotFoundError if q would exceed `bound`.
CmField find_cm_field(unsigned ell, std::uint64_t bound = 1 << 20);
bool cm_field_valid(const CmField &field, unsigned ell);

/// Value of the multilinear extension of `table` (2^n entries, entry
/// index bit i = variable i) at `point` in F_q^n.
std::uint64_t multilinear_extension(std::span<const std::uint64_t> table,
                                    std::span<const std::uint64_t> point, std::uint64_t q);

/**
 * Reed-Muller scheme: R = F_q^ell, s servers, DetQuery(a, j) = omega^{-j} a
 * with a read as its bit vector, and answer g(omega^j x, omega^j y) / s for
 * g the multilinear extension of the database in 2 ell variables.
 */
class CmCir final : public CirScheme {
public:
    explicit CmCir(unsigned ell);
    CmCir(unsigned ell, CmField field);

    const Ring &ring() const noexcept override { return ring_; }
    std::uint64_t servers() const noexcept override { return field_.s; }
    std::uint64_t index_count() const noexcept override { return std::uint64_t{1} << ell_; }

    RingElement det_query(std::uint64_t a, std::uint64_t j, bool mu) const override;
    CirState get_state(RingElement &x, RingElement &y, CirOracle &oracle) const override;
    RingElement answer_and_reconstruct(std::span<const RingElement> db, const CirState &state,
                                       std::uint64_t j, const RingElement &query,
                                       const RingElement &query2) const override;

    const CmField &field() const noexcept { return field_; }
    /// ell-bit value as a 0/1 vector, coordinate i = bit i.
    RingElement bits_of(std::uint64_t value) const;

private:
    unsigned ell_;
    CmField field_;
    Ring ring_;
};

/// Database of records f(r, s) as 0/1 vectors, index (r << ell) | s.
std::vector<RingElement> cm_database(const CmCir &scheme, const TruthTableView &f);

} // namespace catmv
