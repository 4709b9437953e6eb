#include "catmv/pir.hpp"

#include <algorithm>
#include <bit>

namespace catmv {

PirScheme::PirScheme(const MvFamily &family, std::uint64_t q, std::vector<std::uint64_t> generators,
                     std::vector<std::uint64_t> db)
    : family_(&family), q_(q), generators_(std::move(generators)), db_(std::move(db)) {
    const auto &basis = family.basis();
    if (!is_prime(q)) throw InputError("pir: q = " + std::to_string(q) + " is not prime");
    if ((q - 1) % basis.modulus() != 0) throw InputError("pir: m does not divide q - 1");
    if (generators_.size() != basis.size()) throw InputError("pir: need one generator per prime");
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (generators_[j] == 0 || generators_[j] >= q ||
            multiplicative_order(generators_[j], q) != basis.prime(j))
            throw InputError("pir: generator " + std::to_string(j) + " has the wrong order");
    if (db_.size() != family.size())
        throw InputError("pir: database needs " + std::to_string(family.size()) + " entries");
    for (auto v : db_)
        if (v >= q) throw InputError("pir: database entry not in Z_q");
}

PirScheme::PirScheme(const MvFamily &family, std::uint64_t q, std::vector<std::uint64_t> db,
                     std::uint64_t seed)
    : PirScheme(family, q, roots_for_prime(family.basis(), q, seed).generators, std::move(db)) {}

std::vector<std::vector<Coord>> pir_query(const PirScheme &scheme, std::uint64_t i_star,
                                          std::span<const Coord> r) {
    const auto &family = scheme.family();
    const auto &basis = family.basis();
    const auto m = family.modulus();
    if (i_star >= family.size()) throw InputError("pir: index out of range");
    if (r.size() != family.dim()) throw InputError("pir: randomness has the wrong dimension");
    const auto u = family.u_stream(i_star);
    std::vector<std::vector<Coord>> out;
    std::vector<std::uint64_t> bits(basis.size());
    for (std::uint64_t b = 0; b < scheme.servers(); ++b) {
        for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = (b >> j) & 1;
        const auto scale = crt_combine(bits, basis);
        std::vector<Coord> qu(r.size());
        for (std::size_t k = 0; k < r.size(); ++k)
            qu[k] = static_cast<Coord>(add_mod(r[k] % m, mul_mod(scale, u(k), m), m));
        out.push_back(std::move(qu));
    }
    return out;
}

namespace {

std::uint64_t character(const PirScheme &scheme, std::uint64_t inner) {
    const auto &basis = scheme.family().basis();
    std::uint64_t acc = 1;
    for (std::size_t j = 0; j < basis.size(); ++j)
        acc = mul_mod(acc, pow_mod(scheme.generators()[j], inner % basis.prime(j), scheme.q()),
                      scheme.q());
    return acc;
}

} // namespace

std::uint64_t pir_answer(const PirScheme &scheme, std::span<const Coord> query) {
    const auto &family = scheme.family();
    if (query.size() != family.dim()) throw InputError("pir: query has the wrong dimension");
    const auto q = scheme.q();
    std::uint64_t ans = 0;
    for (std::uint64_t i = 0; i < family.size(); ++i) {
        const auto inner = dot(query, family.v_stream(i), family.modulus());
        ans = add_mod(ans, mul_mod(scheme.database()[i], character(scheme, inner), q), q);
    }
    return ans;
}

std::uint64_t pir_reconstruct(const PirScheme &scheme, std::uint64_t i_star,
                              std::span<const Coord> r, std::span<const std::uint64_t> answers) {
    const auto &family = scheme.family();
    const auto q = scheme.q();
    if (answers.size() != scheme.servers()) throw InputError("pir: one answer per server");
    if (r.size() != family.dim()) throw InputError("pir: randomness has the wrong dimension");
    std::uint64_t signed_sum = 0;
    for (std::uint64_t b = 0; b < answers.size(); ++b)
        signed_sum = (std::popcount(b) & 1) ? sub_mod(signed_sum, answers[b] % q, q)
                                            : add_mod(signed_sum, answers[b] % q, q);
    const auto inner = dot(r, family.v_stream(i_star), family.modulus());
    std::uint64_t divisor = character(scheme, inner);
    for (auto g : scheme.generators()) divisor = mul_mod(divisor, sub_mod(1, g, q), q);
    if (divisor == 0) throw InvariantViolation("pir: reconstruction divisor is zero");
    return mul_mod(signed_sum, mod_inverse(divisor, q), q);
}

PrivacyReport pir_privacy_check(const PirScheme &scheme, std::uint64_t max_index) {
    const auto &family = scheme.family();
    const auto &basis = family.basis();
    const auto m = family.modulus();
    const auto n = std::min(max_index, family.size());
    PrivacyReport report;
    std::vector<std::uint8_t> seen(m);
    std::vector<std::uint64_t> bits(basis.size());
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto u = family.u_stream(i);
        for (std::uint64_t b = 0; b < scheme.servers(); ++b) {
            for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = (b >> j) & 1;
            const auto shift = crt_combine(bits, basis);
            for (std::size_t k = 0; k < family.dim(); ++k) {
                std::fill(seen.begin(), seen.end(), 0);
                const auto offset = mul_mod(shift, u(k), m);
                for (std::uint64_t rk = 0; rk < m; ++rk) seen[add_mod(rk, offset, m)] += 1;
                ++report.cases;
                for (std::uint64_t v = 0; v < m; ++v) {
                    if (seen[v] != 1) {
                        report.pass = false;
                        report.failure = "index " + std::to_string(i) + " server " +
                                         std::to_string(b) + " coordinate " + std::to_string(k) +
                                         ": value " + std::to_string(v) + " hit " +
                                         std::to_string(seen[v]) + " times";
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

} // namespace catmv
