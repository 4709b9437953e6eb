#include "catmv/cir.hpp"

namespace catmv {

CmField find_cm_field(unsigned ell, std::uint64_t bound) {
    if (ell == 0 || ell > 16) throw InputError("cm_cir: ell must be in [1, 16]");
    for (std::uint64_t q = 2 * ell + 2; q <= bound; ++q) {
        if (!is_prime(q)) continue;
        for (std::uint64_t s = 2 * ell + 1; s < q; ++s) {
            if ((q - 1) % s != 0) continue;
            for (std::uint64_t w = 2; w < q; ++w)
                if (multiplicative_order(w, q) == s) return {q, s, w};
        }
    }
    throw NotFoundError("cm_cir: no prime field with a suitable root of unity up to " +
                        std::to_string(bound));
}

bool cm_field_valid(const CmField &field, unsigned ell) {
    if (!is_prime(field.q)) return false;
    if (field.s <= 2 * std::uint64_t{ell} || field.s >= field.q) return false;
    if (field.omega == 0 || field.omega >= field.q) return false;
    return multiplicative_order(field.omega, field.q) == field.s;
}

std::uint64_t multilinear_extension(std::span<const std::uint64_t> table,
                                    std::span<const std::uint64_t> point, std::uint64_t q) {
    const auto n = point.size();
    if (n >= 32 || table.size() != (std::size_t{1} << n))
        throw InputError("multilinear_extension: table must have 2^n entries");
    // Fold one variable at a time: T'(w) = (1 - z) T(w, 0) + z T(w, 1).
    std::vector<std::uint64_t> cur(table.begin(), table.end());
    for (auto &c : cur) c %= q;
    for (std::size_t i = n; i-- > 0;) {
        const auto z = point[i] % q, one_minus = sub_mod(1, z, q);
        const std::size_t half = std::size_t{1} << i;
        for (std::size_t w = 0; w < half; ++w)
            cur[w] = add_mod(mul_mod(one_minus, cur[w], q), mul_mod(z, cur[w | half], q), q);
        cur.resize(half);
    }
    return cur[0];
}

CmCir::CmCir(unsigned ell) : CmCir(ell, find_cm_field(ell)) {}

CmCir::CmCir(unsigned ell, CmField field) : ell_(ell), field_(field), ring_{field.q, ell} {
    if (!cm_field_valid(field, ell))
        throw InputError("cm_cir: field (q=" + std::to_string(field.q) + ", s=" +
                         std::to_string(field.s) + ", omega=" + std::to_string(field.omega) +
                         ") is not valid for ell=" + std::to_string(ell));
}

RingElement CmCir::bits_of(std::uint64_t value) const {
    RingElement out(ell_);
    for (unsigned i = 0; i < ell_; ++i) out[i] = static_cast<Coord>((value >> i) & 1);
    return out;
}

RingElement CmCir::det_query(std::uint64_t a, std::uint64_t j, bool) const {
    if (a >= index_count() || j >= servers()) throw InputError("cm_cir: query out of range");
    const auto q = field_.q;
    const auto w = pow_mod(mod_inverse(field_.omega, q), j, q);
    return ring_.scaled(w, bits_of(a));
}

CirState CmCir::get_state(RingElement &, RingElement &, CirOracle &) const { return {}; }

RingElement CmCir::answer_and_reconstruct(std::span<const RingElement> db, const CirState &,
                                          std::uint64_t j, const RingElement &query,
                                          const RingElement &query2) const {
    const auto q = field_.q;
    if (query.size() != ell_ || query2.size() != ell_)
        throw InputError("cm_cir: query length mismatch");
    const auto wj = pow_mod(field_.omega, j, q);
    // Variables 0..ell-1 carry the second index, ell..2ell-1 the first, so the
    // table index of (r, s) is (r << ell) | s.
    std::vector<std::uint64_t> point(2 * ell_);
    for (unsigned i = 0; i < ell_; ++i) {
        point[i] = mul_mod(wj, query2[i], q);
        point[ell_ + i] = mul_mod(wj, query[i], q);
    }
    const auto inv_s = mod_inverse(field_.s % q, q);
    RingElement out(ell_);
    std::vector<std::uint64_t> table(db.size());
    for (unsigned c = 0; c < ell_; ++c) {
        for (std::size_t k = 0; k < db.size(); ++k) table[k] = db[k][c];
        out[c] = static_cast<Coord>(mul_mod(multilinear_extension(table, point, q), inv_s, q));
    }
    return out;
}

std::vector<RingElement> cm_database(const CmCir &scheme, const TruthTableView &f) {
    const auto n = scheme.index_count();
    if (f.entries.size() != n * n) throw InputError("cm_database: table size mismatch");
    std::vector<RingElement> db;
    db.reserve(n * n);
    for (auto v : f.entries) db.push_back(scheme.bits_of(v));
    return db;
}

} // namespace catmv
