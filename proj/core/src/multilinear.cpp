#include "catmv/multilinear.hpp"

#include <algorithm>
#include <bit>

#include "catmv/errors.hpp"
#include "catmv/modmath.hpp"

namespace catmv {

MultilinearPoly::MultilinearPoly(unsigned num_vars, std::uint64_t modulus)
    : num_vars_(num_vars), modulus_(modulus) {
    if (num_vars > 64) throw InputError("multilinear polynomials limited to 64 variables");
    if (modulus < 2) throw InputError("modulus must be at least 2");
}

MultilinearPoly MultilinearPoly::constant(unsigned num_vars, std::uint64_t modulus,
                                          std::uint64_t c) {
    MultilinearPoly f(num_vars, modulus);
    f.add_term(0, c % modulus);
    return f;
}

MultilinearPoly MultilinearPoly::elementary_symmetric(unsigned num_vars, std::uint64_t modulus,
                                                      unsigned k) {
    MultilinearPoly f(num_vars, modulus);
    if (k > num_vars) return f;
    if (num_vars > 63) throw InputError("elementary_symmetric limited to 63 variables");
    if (k == 0) return constant(num_vars, modulus, 1);
    const SubsetMask limit = SubsetMask{1} << num_vars;
    for (SubsetMask s = (SubsetMask{1} << k) - 1; s < limit; s = next_same_size(s))
        f.terms_.emplace_hint(f.terms_.end(), s, 1 % modulus);
    return f;
}

std::uint64_t MultilinearPoly::coefficient(SubsetMask monomial) const {
    const auto it = terms_.find(monomial);
    return it == terms_.end() ? 0 : it->second;
}

void MultilinearPoly::add_term(SubsetMask monomial, std::uint64_t coeff) {
    coeff %= modulus_;
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coeff);
    if (!inserted) {
        it->second = add_mod(it->second, coeff, modulus_);
        if (it->second == 0) terms_.erase(it);
    }
}

unsigned MultilinearPoly::degree() const {
    unsigned deg = 0;
    for (const auto &[mono, c] : terms_)
        deg = std::max(deg, static_cast<unsigned>(std::popcount(mono)));
    return deg;
}

std::uint64_t MultilinearPoly::evaluate(SubsetMask point) const {
    std::uint64_t v = 0;
    for (const auto &[mono, c] : terms_)
        if ((mono & ~point) == 0) v = add_mod(v, c, modulus_);
    return v;
}

MultilinearPoly MultilinearPoly::restrict_to(SubsetMask keep) const {
    MultilinearPoly f(num_vars_, modulus_);
    for (const auto &[mono, c] : terms_)
        if ((mono & ~keep) == 0) f.terms_.emplace_hint(f.terms_.end(), mono, c);
    return f;
}

MultilinearPoly &MultilinearPoly::operator+=(const MultilinearPoly &rhs) {
    if (rhs.modulus_ != modulus_) throw InputError("adding polynomials over different rings");
    for (const auto &[mono, c] : rhs.terms_) add_term(mono, c);
    return *this;
}

MultilinearPoly &MultilinearPoly::operator-=(const MultilinearPoly &rhs) {
    if (rhs.modulus_ != modulus_) throw InputError("subtracting polynomials over different rings");
    for (const auto &[mono, c] : rhs.terms_) add_term(mono, neg_mod(c, modulus_));
    return *this;
}

MultilinearPoly operator*(const MultilinearPoly &a, const MultilinearPoly &b) {
    if (a.modulus_ != b.modulus_) throw InputError("multiplying polynomials over different rings");
    MultilinearPoly out(std::max(a.num_vars_, b.num_vars_), a.modulus_);
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) out.add_term(ma | mb, mul_mod(ca, cb, a.modulus_));
    return out;
}

MultilinearPoly MultilinearPoly::pow(unsigned exponent) const {
    auto result = constant(num_vars_, modulus_, 1);
    for (unsigned i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

MultilinearPoly weight_indicator_poly(std::uint64_t p, unsigned e, std::uint64_t w,
                                      unsigned num_vars) {
    if (p % 2 == 0 || !is_prime(p)) throw InputError("weight_indicator_poly needs an odd prime");
    if (e == 0) throw InputError("weight_indicator_poly needs e >= 1");
    const auto one = MultilinearPoly::constant(num_vars, p, 1);
    auto all_digits_match = one;
    std::uint64_t power = 1;   // p^j
    std::uint64_t digits = w;  // w shifted right by j base-p digits
    for (unsigned j = 0; j < e; ++j) {
        const auto digit = digits % p;
        digits /= p;
        MultilinearPoly diff = power > num_vars
                                   ? MultilinearPoly(num_vars, p)
                                   : MultilinearPoly::elementary_symmetric(
                                         num_vars, p, static_cast<unsigned>(power));
        diff -= MultilinearPoly::constant(num_vars, p, digit);
        all_digits_match = all_digits_match * (one - diff.pow(static_cast<unsigned>(p - 1)));
        power *= p;
    }
    return one - all_digits_match;
}

} // namespace catmv
