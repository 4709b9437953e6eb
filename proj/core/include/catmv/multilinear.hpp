#pragma once

#include <cstdint>
#include <map>

#include "catmv/combinatorics.hpp"

namespace catmv {

/**
 * Multilinear polynomial over Z_modulus in at most 64 variables. Each
 * monomial is the product of the variables in a subset mask; absent masks
 * have coefficient zero and zero coefficients are never stored.
 */
class MultilinearPoly {
public:
    MultilinearPoly(unsigned num_vars, std::uint64_t modulus);

    static MultilinearPoly constant(unsigned num_vars, std::uint64_t modulus, std::uint64_t c);
    /// e_k(x_1..x_n): sum of all degree-k square-free monomials.
    static MultilinearPoly elementary_symmetric(unsigned num_vars, std::uint64_t modulus,
                                                unsigned k);

    unsigned num_vars() const noexcept { return num_vars_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const std::map<SubsetMask, std::uint64_t> &terms() const noexcept { return terms_; }

    std::uint64_t coefficient(SubsetMask monomial) const;
    void add_term(SubsetMask monomial, std::uint64_t coeff);
    unsigned degree() const;

    /// Value at the 0/1 point whose ones are `point`.
    std::uint64_t evaluate(SubsetMask point) const;

    /// Sets every variable outside `keep` to zero.
    MultilinearPoly restrict_to(SubsetMask keep) const;

    MultilinearPoly &operator+=(const MultilinearPoly &rhs);
    MultilinearPoly &operator-=(const MultilinearPoly &rhs);
    /// Product followed by x^2 -> x.
    friend MultilinearPoly operator*(const MultilinearPoly &a, const MultilinearPoly &b);
    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly &b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly &b) { return a -= b; }
    MultilinearPoly pow(unsigned exponent) const;

    friend bool operator==(const MultilinearPoly &, const MultilinearPoly &) = default;

private:
    unsigned num_vars_;
    std::uint64_t modulus_;
    std::map<SubsetMask, std::uint64_t> terms_;
};

/**
 * Multilinear f over Z_p with deg f <= p^e - 1 such that, on 0/1 points,
 * f(x) = 0 when sum(x) = w (mod p^e) and f(x) = 1 otherwise:
 *
 *   f = 1 - prod_{j<e} (1 - (e_{p^j}(x) - w_j)^(p-1)),
 *
 * w_j the base-p digits of w. By Lucas, e_{p^j} evaluates to the j-th
 * digit of sum(x) mod p, and Fermat turns each factor into an equality test.
 */
MultilinearPoly weight_indicator_poly(std::uint64_t p, unsigned e, std::uint64_t w,
                                      unsigned num_vars);

} // namespace catmv
