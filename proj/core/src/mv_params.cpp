#include "catmv/mv_family.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "catmv/errors.hpp"

namespace catmv {
namespace {


// base^exp, saturating at 2^127.
u128 saturating_pow(u128 base, unsigned exp) {
    const u128 cap = u128{1} << 127;
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
    }
    return r;
}

// Largest k with k^t <= x.
std::uint64_t floor_root(u128 x, unsigned t) {
    std::uint64_t lo = 0, hi = 1;
    while (saturating_pow(hi, t) <= x) hi *= 2;
    while (hi - lo > 1) {
        const auto mid = lo + (hi - lo) / 2;
        (saturating_pow(mid, t) <= x ? lo : hi) = mid;
    }
    return lo;
}

// Smallest h with h^t >= x.
std::uint64_t ceil_root(u128 x, unsigned t) {
    const auto f = floor_root(x, t);
    return saturating_pow(f, t) == x ? f : f + 1;
}

} // namespace

std::uint64_t dimension_degree_bound(const PrimeBasis &basis, unsigned w) {
    return floor_root(u128{basis.modulus()} * w, static_cast<unsigned>(basis.size()));
}

MvParams params_for_weight(const PrimeBasis &basis, unsigned w) {
    if (w == 0) throw InputError("set weight w must be >= 1");
    const auto t = static_cast<unsigned>(basis.size());
    MvParams p{basis, w, 0, {}, 0, 0, 0, 0, 0};

    const auto h = ceil_root(saturating_pow(w, t + 1), t);
    if (h > 63) throw InputError("universe of " + std::to_string(h) + " sets exceeds 63");
    p.h_sets = static_cast<unsigned>(h);

    // e_i minimal (>= 1) with p_i^{e_i} > (m w)^{1/t} / p_i, i.e. (p_i^{e_i+1})^t > m w.
    const u128 mw = u128{basis.modulus()} * w;
    std::uint64_t max_power = 0;
    for (const auto prime : basis.primes()) {
        unsigned e = 1;
        while (saturating_pow(saturating_pow(prime, e + 1), t) <= mw) ++e;
        p.exponents.push_back(e);
        max_power = std::max<std::uint64_t>(max_power,
                                            static_cast<std::uint64_t>(saturating_pow(prime, e)));
    }
    p.max_degree = static_cast<unsigned>(std::min<std::uint64_t>(max_power - 1, 1u << 30));
    const auto bound = dimension_degree_bound(basis, w);
    p.degree_cap = static_cast<unsigned>(
        std::min<std::uint64_t>(p.h_sets, std::max<std::uint64_t>(bound, p.max_degree)));
    p.family_size = binomial(p.h_sets, w);
    p.dim = binomial_prefix(p.h_sets, p.degree_cap) + 1;
    return p;
}

MvParams select_params(unsigned ell, const PrimeBasis &basis, unsigned max_w,
                       std::size_t max_dim) {
    if (ell == 0) throw InputError("select_params: ell must be >= 1");
    if (ell >= 63) throw InputError("select_params: ell too large");
    const std::uint64_t needed = std::uint64_t{1} << ell;
    for (unsigned w = 1; w <= max_w; ++w) {
        std::optional<MvParams> candidate;
        try {
            candidate = params_for_weight(basis, w);
        } catch (const InputError &) {
            break; // universe outgrew 63 elements; larger w only grows it
        }
        auto &p = *candidate;
        if (p.family_size < needed) continue;
        if (p.dim > max_dim)
            throw NotFoundError("select_params: smallest feasible w = " + std::to_string(w) +
                                " needs dimension " + std::to_string(p.dim));
        p.target_ell = ell;
        p.validate();
        return p;
    }
    throw NotFoundError("select_params: no w <= " + std::to_string(max_w) + " gives 2^" +
                        std::to_string(ell) + " sets");
}

void MvParams::validate() const {
    auto fail = [this](const std::string &what) {
        throw InvariantViolation("MvParams (" + describe() + "): " + what);
    };
    if (exponents.size() != basis.size()) fail("one exponent per prime");
    u128 product = 1;
    std::uint64_t max_power = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (exponents[i] == 0) fail("exponents must be >= 1");
        const auto pe = saturating_pow(basis.prime(i), exponents[i]);
        product = std::min<u128>(product * pe, u128{1} << 100);
        max_power = std::max<std::uint64_t>(max_power, static_cast<std::uint64_t>(pe));
    }
    if (product <= w) fail("prod p_i^e_i must exceed w");
    if (h_sets < w) fail("h_sets must be >= w");
    if (max_degree != max_power - 1) fail("D must equal max p_i^e_i - 1");
    if (degree_cap < std::min(max_degree, h_sets)) fail("degree cap below D");
    if (family_size != binomial(h_sets, w)) fail("N must equal C(h_sets, w)");
    if (target_ell != 0 && family_size < (std::uint64_t{1} << target_ell))
        fail("family smaller than 2^ell");
    if (dim != binomial_prefix(h_sets, degree_cap) + 1) fail("d must count monomials + 1");
    // Every p_i^{e_i} <= (m w)^{1/t} unless e_i = 1 is forced by e_i >= 1.
    const auto bound = dimension_degree_bound(basis, w);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (exponents[i] > 1 && saturating_pow(basis.prime(i), exponents[i]) > bound)
            fail("p_i^e_i exceeds (m w)^{1/t}");
}

std::string MvParams::describe() const {
    std::ostringstream os;
    os << "primes=";
    for (std::size_t i = 0; i < basis.size(); ++i) os << (i ? "," : "") << basis.prime(i);
    os << " w=" << w << " h_sets=" << h_sets << " e=";
    for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
    os << " D=" << max_degree << " cap=" << degree_cap << " N=" << family_size << " d=" << dim
       << " ell=" << target_ell;
    return os.str();
}

} // namespace catmv
