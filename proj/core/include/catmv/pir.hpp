#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "catmv/mv_family.hpp"

namespace catmv {

/**
 * 2^t-server PIR over Z_q from a matching-vector family: m | q - 1 and g_j
 * has order p_j. Server (b_1..b_t) is indexed by the integer with bit j = b_j.
 */
class PirScheme {
public:
    /// Throws InputError unless q is prime with m | q - 1, every generator
    /// has the right order, and db has one entry below q per family member.
    PirScheme(const MvFamily &family, std::uint64_t q, std::vector<std::uint64_t> generators,
              std::vector<std::uint64_t> db);
    /// Generators from roots_for_prime(basis, q, seed).
    PirScheme(const MvFamily &family, std::uint64_t q, std::vector<std::uint64_t> db,
              std::uint64_t seed = 0x5eed);

    const MvFamily &family() const noexcept { return *family_; }
    std::uint64_t q() const noexcept { return q_; }
    std::span<const std::uint64_t> generators() const noexcept { return generators_; }
    std::span<const std::uint64_t> database() const noexcept { return db_; }
    std::uint64_t servers() const noexcept { return std::uint64_t{1} << generators_.size(); }

private:
    const MvFamily *family_;
    std::uint64_t q_;
    std::vector<std::uint64_t> generators_;
    std::vector<std::uint64_t> db_;
};

/// r + CRT(b) u_{i*} for every server b.
std::vector<std::vector<Coord>> pir_query(const PirScheme &scheme, std::uint64_t i_star,
                                          std::span<const Coord> r);

/// sum_i DB_i prod_j g_j^{<query, v_i>}.
std::uint64_t pir_answer(const PirScheme &scheme, std::span<const Coord> query);

/// Signed sum of the answers divided by prod_j g_j^{<r, v_{i*}>} (1 - g_j).
/// Throws InvariantViolation if the divisor is zero.
std::uint64_t pir_reconstruct(const PirScheme &scheme, std::uint64_t i_star,
                              std::span<const Coord> r, std::span<const std::uint64_t> answers);

struct PrivacyReport {
    bool pass = true;
    std::uint64_t cases = 0;   ///< (index, server, coordinate) triples enumerated
    std::string failure;

    explicit operator bool() const noexcept { return pass; }
};

/// For every index, server and coordinate, checks that r_k -> r_k + CRT(b) u_{i,k}
/// hits every element of Z_m exactly once, so every query is uniform on Z_m^d
/// whatever the index.
PrivacyReport pir_privacy_check(const PirScheme &scheme, std::uint64_t max_index);

} // namespace catmv
