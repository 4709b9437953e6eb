#include "catmv/modmath.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "catmv/errors.hpp"
#include "catmv/rng.hpp"

namespace catmv {

PrimeBasis::PrimeBasis(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw InputError("prime basis needs at least one prime");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const auto p = primes_[i];
        if (p % 2 == 0 || !is_prime(p))
            throw InputError("basis entry " + std::to_string(p) + " is not an odd prime");
        for (std::size_t j = 0; j < i; ++j)
            if (primes_[j] == p) throw InputError("basis primes must be distinct");
        if (modulus_ > (std::uint64_t{1} << 32) / p)
            throw InputError("modulus exceeds 2^32; out of desk scale");
        modulus_ *= p;
    }
    crt_weights_.reserve(primes_.size());
    for (const auto p : primes_) {
        const std::uint64_t rest = modulus_ / p;
        // rest * (rest^{-1} mod p) is 1 mod p and 0 mod every other prime.
        crt_weights_.push_back(rest * mod_inverse(rest % p, p));
    }
}

unsigned PrimeBasis::element_bits() const noexcept { return bits_for(modulus_); }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

unsigned bits_for(std::uint64_t n) noexcept {
    unsigned bits = 1;
    while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f != 0) continue;
        out.push_back(f);
        while (n % f == 0) n /= f;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t q) {
    if (a % q == 0) throw InputError("zero has no multiplicative order");
    std::uint64_t order = q - 1;
    for (const auto f : prime_factors(q - 1))
        while (order % f == 0 && pow_mod(a, order / f, q) == 1) order /= f;
    return order;
}

std::uint64_t crt_combine(std::span<const std::uint64_t> residues, const PrimeBasis &basis) {
    if (residues.size() != basis.size())
        throw InputError("crt_combine: expected " + std::to_string(basis.size()) +
                         " residues, got " + std::to_string(residues.size()));
    const auto m = basis.modulus();
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (residues[i] >= basis.prime(i))
            throw InputError("crt_combine: residue " + std::to_string(residues[i]) +
                             " not reduced mod " + std::to_string(basis.prime(i)));
        v = add_mod(v, mul_mod(residues[i], basis.crt_weights()[i], m), m);
    }
    return v;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 64-bit values; m < 2^32 keeps this in range.
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const auto q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1 && !(m == 1 && old_r == 0))
        throw NotInvertibleError("mod_inverse: gcd(" + std::to_string(a) + ", " +
                                 std::to_string(m) + ") != 1");
    return lift_mod(old_s, m);
}

std::uint64_t mod_inverse(std::uint64_t a, const PrimeBasis &basis) {
    return mod_inverse(a, basis.modulus());
}

std::vector<std::uint64_t> canonical_set(const PrimeBasis &basis) {
    const auto t = basis.size();
    std::vector<std::uint64_t> out;
    out.reserve((std::size_t{1} << t) - 1);
    std::vector<std::uint64_t> bits(t);
    for (std::uint64_t pattern = 1; pattern < (std::uint64_t{1} << t); ++pattern) {
        for (std::size_t i = 0; i < t; ++i) bits[i] = (pattern >> i) & 1;
        out.push_back(crt_combine(bits, basis));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PrimeWithRoots roots_for_prime(const PrimeBasis &basis, std::uint64_t q, std::uint64_t seed) {
    if (!is_prime(q) || (q - 1) % basis.modulus() != 0)
        throw InputError("q = " + std::to_string(q) + " is not a prime with m | q - 1");
    SeededRng rng(seed);
    PrimeWithRoots out{q, {}};
    for (const auto p : basis.primes()) {
        std::uint64_t g = 1;
        while (g == 1) g = pow_mod(1 + rng.below(q - 1), (q - 1) / p, q);
        out.generators.push_back(g);
    }
    return out;
}

PrimeWithRoots find_prime_with_roots(const PrimeBasis &basis, std::uint64_t search_bound,
                                     std::uint64_t seed) {
    const auto m = basis.modulus();
    if (search_bound < m + 1)
        throw InputError("find_prime_with_roots: search bound must be at least m + 1");
    // m is odd, so q = 1 + k*m is odd exactly when k is even.
    for (std::uint64_t q = 2 * m + 1; q <= search_bound; q += 2 * m)
        if (is_prime(q)) return roots_for_prime(basis, q, seed);
    throw NotFoundError("no prime q <= " + std::to_string(search_bound) + " with " +
                        std::to_string(m) + " | q - 1");
}

} // namespace catmv
