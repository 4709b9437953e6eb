#include <bit>

#include "catmv/cir.hpp"

namespace catmv {

MvCir::MvCir(const MvFamily &family, unsigned ell)
    : family_(&family), ell_(ell), t_(family.basis().size()), d_(family.dim()),
      ring_{family.modulus(), 2 * family.dim()} {
    if (ell == 0 || ell > 16) throw InputError("mv_cir: ell must be in [1, 16]");
    if (family.size() < (std::uint64_t{1} << ell))
        throw InputError("mv_cir: family has fewer than 2^ell members");
}

RingElement MvCir::det_query(std::uint64_t a, std::uint64_t j, bool mu) const {
    if (a >= index_count() || j >= servers()) throw InputError("mv_cir: query out of range");
    const auto &basis = family_->basis();
    std::vector<std::uint64_t> bits(t_);
    for (std::size_t i = 0; i < t_; ++i) bits[i] = (j >> (mu ? t_ + i : i)) & 1;
    const auto scale = crt_combine(bits, basis);
    RingElement out(2 * d_);
    const auto u = family_->u_stream(a), v = family_->v_stream(a);
    const auto m = ring_.modulus;
    for (std::size_t k = 0; k < d_; ++k) {
        out[k] = static_cast<Coord>(mul_mod(scale, u(k), m));
        out[d_ + k] = static_cast<Coord>(mul_mod(scale, v(k), m));
    }
    return out;
}

namespace {

/// <p[first_a : first_a + d], q[first_b : first_b + d]>
std::uint64_t half_dot(const RingElement &p, std::size_t first_a, const RingElement &q,
                       std::size_t first_b, std::size_t d, std::uint64_t m) {
    return dot(std::span<const Coord>(p).subspan(first_a, d),
               SpanSource{std::span<const Coord>(q).subspan(first_b, d)}, m);
}

} // namespace

CirState MvCir::get_state(RingElement &x, RingElement &y, CirOracle &oracle) const {
    const auto m = ring_.modulus;
    const auto all_ones = servers() - 1;
    // Adding DetQuery(a) = (u_a || v_a) to y moves <x[:d], y[d:]> by <x[:d], v_a>.
    const auto before1 = half_dot(x, 0, y, d_, d_, m);
    oracle.apply(y, false, false, 1, all_ones);
    const auto after1 = half_dot(x, 0, y, d_, d_, m);
    oracle.apply(y, false, false, m - 1, all_ones);

    const auto before2 = half_dot(y, 0, x, d_, d_, m);
    oracle.apply(x, true, true, 1, all_ones);
    const auto after2 = half_dot(y, 0, x, d_, d_, m);
    oracle.apply(x, true, true, m - 1, all_ones);

    const auto g1 = sub_mod(after1, before1, m), g2 = sub_mod(after2, before2, m);
    CirState st;
    st.fields = {g1, g2};
    st.bits = 2 * std::uint64_t{family_->basis().element_bits()};
    std::vector<std::uint64_t> betas;
    for (auto p : family_->basis().primes()) {
        const auto sm = sentinel_poly_monomial(p, g1 % p, g2 % p);
        st.fields.push_back(lift_mod(sm.alpha, m));
        betas.push_back(sm.beta);
        st.bits += 3 + bits_for(p);
    }
    st.fields.insert(st.fields.end(), betas.begin(), betas.end());
    return st;
}

RingElement MvCir::answer_and_reconstruct(std::span<const RingElement> db, const CirState &state,
                                          std::uint64_t j, const RingElement &query,
                                          const RingElement &query2) const {
    const auto m = ring_.modulus;
    if (state.fields.size() != 2 + 2 * t_) throw InputError("mv_cir: malformed state");
    if (query.size() != 2 * d_ || query2.size() != 2 * d_)
        throw InputError("mv_cir: query length mismatch");
    std::uint64_t alpha = 1;
    for (std::size_t i = 0; i < t_; ++i) alpha = mul_mod(alpha, state.fields[2 + i], m);
    const auto target = crt_combine(std::span(state.fields).subspan(2 + t_, t_), family_->basis());
    auto scale = mod_inverse(alpha, m);
    if (std::popcount(j) & 1) scale = neg_mod(scale, m);

    const std::span<const Coord> xt(query.data(), d_), yt(query2.data(), d_);
    auto ans = ring_.zero();
    const std::uint64_t n = index_count();
    for (std::uint64_t r = 0; r < n; ++r) {
        const auto gx = dot(xt, family_->v_stream(r), m);
        for (std::uint64_t s = 0; s < n; ++s) {
            if (mul_mod(gx, dot(yt, family_->v_stream(s), m), m) != target) continue;
            ring_.add_scaled(ans, scale, db[(r << ell_) | s]);
        }
    }
    return ans;
}

RingElement MvCir::embed(std::span<const Coord> w) const {
    if (w.size() != d_) throw InputError("mv_cir: embed expects a d-dimensional vector");
    RingElement out = ring_.zero();
    std::copy(w.begin(), w.end(), out.begin());
    return out;
}

} // namespace catmv
