#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace catmv {

__extension__ using u128 = unsigned __int128;

/**
 * The ground ring Z_m for a squarefree odd modulus m = p_1 * ... * p_t,
 * always carried in factored form.
 *
 * Desk scale only: m must stay below 2^32 so that every product of two
 * residues fits in 64 bits.
 */
class PrimeBasis {
public:
    /// Throws InputError unless the primes are distinct odd primes with m < 2^32.
    explicit PrimeBasis(std::vector<std::uint64_t> primes);

    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    std::uint64_t prime(std::size_t i) const { return primes_.at(i); }
    std::uint64_t modulus() const noexcept { return modulus_; }

    /// Bits needed to store one element of Z_m.
    unsigned element_bits() const noexcept;

    /// Idempotents e_i of Z_m: e_i = 1 (mod p_i) and 0 modulo every other prime.
    std::span<const std::uint64_t> crt_weights() const noexcept { return crt_weights_; }

    friend bool operator==(const PrimeBasis &, const PrimeBasis &) = default;

private:
    std::vector<std::uint64_t> primes_;
    std::uint64_t modulus_ = 1;
    std::vector<std::uint64_t> crt_weights_;
};

// Scalar helpers. All operands are assumed reduced unless noted.
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}
inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t m) { return a == 0 ? 0 : m - a; }
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}
/// Reduces a signed integer into [0, m).
inline std::uint64_t lift_mod(std::int64_t a, std::uint64_t m) {
    auto r = a % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Smallest b >= 1 with ceil(log2(n)) bits; values in [0, n) need bits_for(n) bits.
unsigned bits_for(std::uint64_t n) noexcept;

/// Trial-division primality; fine for the small moduli used here.
bool is_prime(std::uint64_t n) noexcept;

/// Multiplicative order of a in Z_q^*, q prime. a must be nonzero mod q.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t q);

/// Distinct prime factors of n in ascending order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// The unique v in Z_m with v = residues[i] (mod p_i). Throws InputError on
/// length mismatch or an unreduced residue.
std::uint64_t crt_combine(std::span<const std::uint64_t> residues, const PrimeBasis &basis);

/// Inverse of a modulo m. Throws NotInvertibleError when gcd(a, m) != 1.
std::uint64_t mod_inverse(std::uint64_t a, const PrimeBasis &basis);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

/// Nonzero v in Z_m whose residue modulo every p_i is 0 or 1, ascending.
std::vector<std::uint64_t> canonical_set(const PrimeBasis &basis);

struct PrimeWithRoots {
    std::uint64_t prime = 0;                 ///< q with m | q - 1
    std::vector<std::uint64_t> generators;   ///< generators[i] has order p_i in Z_q
};

/**
 * Smallest prime q <= search_bound with m | q - 1, together with elements
 * of order exactly p_i. Each generator is r^((q-1)/p_i) for r drawn from a
 * generator seeded by `seed`, retried while the result is 1.
 *
 * Throws InputError if search_bound < m + 1, NotFoundError if no q qualifies.
 */
PrimeWithRoots find_prime_with_roots(const PrimeBasis &basis, std::uint64_t search_bound,
                                     std::uint64_t seed = 0x5eed);

/// Generators for a caller-chosen q. Throws InputError unless q is prime with m | q - 1.
PrimeWithRoots roots_for_prime(const PrimeBasis &basis, std::uint64_t q,
                               std::uint64_t seed = 0x5eed);

} // namespace catmv
