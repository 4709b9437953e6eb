#include "catmv/one_level.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace catmv {

void FamilyOracle::apply(CatalyticState &state, const OracleRequest &request) {
    const auto side = request.ctrl ? FamilySide::V : FamilySide::U;
    const auto index = request.sigma ? b_ : a_;
    state.add_scaled(request.sigma ? Register::Y : Register::X, request.gamma,
                     family_->stream(side, index));
}

ValueLayout value_layout(std::size_t dim, std::uint64_t modulus, unsigned ell) {
    if (ell == 0 || ell > 32) throw InputError("value_layout: ell must be in [1, 32]");
    if (modulus < 2) throw InputError("value_layout: modulus must be at least 2");
    ValueLayout layout;
    layout.ell = ell;
    layout.chunk_bits = static_cast<unsigned>(std::bit_width(modulus) - 1);
    layout.coords = (ell + layout.chunk_bits - 1) / layout.chunk_bits;
    if (layout.coords > dim)
        throw InputError("value_layout: " + std::to_string(layout.coords) +
                         " chunks do not fit in dimension " + std::to_string(dim));
    layout.first_coord = dim - layout.coords;
    return layout;
}

namespace {

std::uint64_t chunk_of(std::uint64_t value, const ValueLayout &layout, std::size_t i) {
    const auto shift = (layout.coords - 1 - i) * layout.chunk_bits;
    return (value >> shift) & ((std::uint64_t{1} << layout.chunk_bits) - 1);
}

} // namespace

std::uint64_t ValueStream::operator()(std::size_t k) const {
    if (k < layout_->first_coord) return 0;
    return chunk_of(value_, *layout_, k - layout_->first_coord);
}

std::vector<Coord> pack_value(std::uint64_t value, const ValueLayout &layout, std::size_t dim) {
    if (layout.ell < 64 && (value >> layout.ell) != 0)
        throw InputError("pack_value: value does not fit in ell bits");
    ValueStream stream(value, layout, dim);
    std::vector<Coord> out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = static_cast<Coord>(stream(k));
    return out;
}

std::uint64_t unpack_value(std::span<const Coord> chunks, const ValueLayout &layout) {
    if (chunks.size() != layout.coords) throw InputError("unpack_value: wrong chunk count");
    std::uint64_t value = 0;
    for (auto c : chunks) {
        if ((std::uint64_t{c} >> layout.chunk_bits) != 0)
            throw InvariantViolation("unpack_value: chunk " + std::to_string(c) + " exceeds " +
                                     std::to_string(layout.chunk_bits) + " bits");
        value = (value << layout.chunk_bits) | c;
    }
    if ((value >> layout.ell) != 0)
        throw InvariantViolation("unpack_value: decoded value exceeds ell bits");
    return value;
}

SentinelMonomial sentinel_poly_monomial(std::uint64_t p, std::uint64_t g1, std::uint64_t g2) {
    if (p < 3) throw InputError("sentinel_poly_monomial: p must be an odd prime");
    g1 %= p;
    g2 %= p;
    const std::uint64_t h1 = (g1 + 1) % p, h2 = (g2 + 1) % p;
    const std::array<std::pair<std::uint64_t, int>, 4> terms{{
        {mul_mod(g1, g2, p), 1},
        {mul_mod(h1, g2, p), -1},
        {mul_mod(g1, h2, p), -1},
        {mul_mod(h1, h2, p), 1},
    }};
    std::array<std::uint64_t, 4> exps{};
    for (std::size_t i = 0; i < 4; ++i) exps[i] = terms[i].first;
    std::sort(exps.begin(), exps.end());
    for (auto e : exps) {
        int coef = 0;
        for (const auto &[te, tc] : terms)
            if (te == e) coef += tc;
        if (coef != 0) return {coef, e};
    }
    throw InvariantViolation("sentinel_poly_monomial: all coefficients cancelled");
}

namespace {

void call(CatalyticState &state, RegisterOracle &oracle, std::uint64_t gamma, bool ctrl,
          bool sigma) {
    state.count_oracle_call();
    oracle.apply(state, OracleRequest{gamma, ctrl, sigma});
}

std::uint64_t reg_dot(const CatalyticState &state) {
    return dot(state.reg(Register::X), SpanSource{state.reg(Register::Y)}, state.modulus());
}

} // namespace

PairedInnerProducts paired_inner_products(CatalyticState &state, RegisterOracle &oracle) {
    const auto m = state.modulus();
    const auto mb = state.basis().element_bits();
    auto tmp = state.ledger().open("paired.tmp", 3 * std::uint64_t{mb} + bits_for(state.dim()));
    const std::uint64_t minus_one = m - 1;

    const auto tmp1 = reg_dot(state);
    state.swap_registers(Register::X, Register::Y);
    // first slot now holds y; adding v_a there shifts the product by <x, v_a>
    call(state, oracle, 1, true, false);
    const auto tmp2 = reg_dot(state);
    call(state, oracle, minus_one, true, false);
    call(state, oracle, 1, true, true);
    const auto tmp3 = reg_dot(state);
    call(state, oracle, minus_one, true, true);
    state.swap_registers(Register::X, Register::Y);

    return {sub_mod(tmp2, tmp1, m), sub_mod(tmp3, tmp1, m)};
}

std::uint64_t one_level_oracle_calls(std::size_t t) noexcept {
    return 4 + 4 * (std::uint64_t{1} << (2 * t));
}

namespace {

template <typename Body>
void with_w(WFamily wfam, const MvFamily &family, const ValueLayout &layout, std::size_t dim,
            std::uint64_t s, Body &&body) {
    switch (wfam) {
    case WFamily::U: body(family.u_stream(s)); break;
    case WFamily::V: body(family.v_stream(s)); break;
    case WFamily::Value: body(ValueStream(s, layout, dim)); break;
    }
}

} // namespace

void one_level_update(const TruthTableView &f, std::uint64_t gamma_star, WFamily wfam,
                      CatalyticState &state, RegisterOracle &oracle, const MvFamily &family,
                      const ValueLayout &layout, const OneLevelOptions &options,
                      OneLevelTrace *trace) {
    const auto &basis = state.basis();
    const auto m = state.modulus();
    const auto d = state.dim();
    const auto t = basis.size();
    const unsigned ell = f.ell;
    if (family.dim() != d) throw InputError("one_level_update: family/register dimension mismatch");
    if (!(family.basis() == basis)) throw InputError("one_level_update: prime basis mismatch");
    if (ell == 0 || ell > 16) throw InputError("one_level_update: ell must be in [1, 16]");
    const std::uint64_t side = std::uint64_t{1} << ell;
    if (f.entries.size() != side * side)
        throw InputError("one_level_update: truth table must have 4^ell entries");
    if (family.size() < side) throw InputError("one_level_update: family smaller than 2^ell");
    if (wfam == WFamily::Value && (layout.ell != ell || layout.first_coord + layout.coords != d))
        throw InputError("one_level_update: value layout does not match");

    auto &ledger = state.ledger();
    const std::uint64_t mb = basis.element_bits();
    const auto calls_before = state.oracle_calls();
    auto frame = ledger.open("one_level.frame",
                             mb + 2 + bits_for(one_level_oracle_calls(t) + 1));

    // Step 1: the two inner products that fix the sentinel.
    const auto inner = paired_inner_products(state, oracle);
    auto gs = ledger.open("one_level.g", 2 * mb);

    // Step 2: per-prime sentinel, the combined target and (prod alpha)^{-1}.
    std::vector<std::uint64_t> betas(t);
    std::int64_t alpha_prod = 1;
    if (trace) trace->sentinels.clear();
    for (std::size_t i = 0; i < t; ++i) {
        const auto p = basis.prime(i);
        const auto sm = sentinel_poly_monomial(p, inner.g1 % p, inner.g2 % p);
        betas[i] = sm.beta;
        alpha_prod *= sm.alpha;
        if (trace) trace->sentinels.push_back(sm);
    }
    gs.close();
    std::uint64_t sentinel_bits = 2 * mb;
    for (auto p : basis.primes()) sentinel_bits += 3 + bits_for(p);
    auto sentinel_scope = ledger.open("one_level.sentinel", sentinel_bits);
    const auto target = crt_combine(betas, basis);
    const auto alpha_inv = mod_inverse(lift_mod(alpha_prod, m), m);
    const auto scale = mul_mod(gamma_star % m, alpha_inv, m);

    if (trace) {
        trace->inner = inner;
        trace->signed_hits.assign(side * side, 0);
    }

    std::vector<Coord> gx_table, gy_table;
    SpaceLedger::Scope tables;
    if (options.precomputed_tables) {
        tables = ledger.open("one_level.tables", 2 * side * mb);
        gx_table.resize(side);
        gy_table.resize(side);
    }

    // Step 3: every assignment of (b_i, c_i) in {0,1}^{2t}.
    auto bc_scope = ledger.open("one_level.bc", 2 * t + mb);
    std::vector<std::uint64_t> bits_b(t), bits_c(t);
    const std::uint64_t assignments = std::uint64_t{1} << (2 * t);
    for (std::uint64_t mask = 0; mask < assignments; ++mask) {
        for (std::size_t i = 0; i < t; ++i) {
            bits_b[i] = (mask >> i) & 1;
            bits_c[i] = (mask >> (t + i)) & 1;
        }
        const auto gamma_b = crt_combine(bits_b, basis);
        const auto gamma_c = crt_combine(bits_c, basis);
        const bool odd = std::popcount(mask) & 1;
        const auto coef = odd ? neg_mod(scale, m) : scale;

        call(state, oracle, gamma_b, false, false);
        call(state, oracle, gamma_c, false, true);
        {
            auto inner_scope = ledger.open(
                "one_level.inner", 3 * std::uint64_t{ell} + bits_for(d) + 3 * mb +
                                       2 * std::uint64_t{family.params().h_sets});
            const auto x = state.reg(Register::X);
            const auto y = state.reg(Register::Y);
            if (options.precomputed_tables) {
                for (std::uint64_t r = 0; r < side; ++r) {
                    gx_table[r] = static_cast<Coord>(dot(x, family.v_stream(r), m));
                    gy_table[r] = static_cast<Coord>(dot(y, family.v_stream(r), m));
                }
            }
            for (std::uint64_t r = 0; r < side; ++r) {
                const std::uint64_t gx = options.precomputed_tables
                                             ? gx_table[r]
                                             : dot(x, family.v_stream(r), m);
                for (std::uint64_t s = 0; s < side; ++s) {
                    const std::uint64_t gy = options.precomputed_tables
                                                 ? gy_table[s]
                                                 : dot(y, family.v_stream(s), m);
                    if (mul_mod(gx, gy, m) != target) continue;
                    if (trace) trace->signed_hits[(r << ell) | s] += odd ? -1 : 1;
                    with_w(wfam, family, layout, d, f(r, s),
                           [&](const auto &w) { state.add_scaled(Register::Z, coef, w); });
                }
            }
        }
        call(state, oracle, neg_mod(gamma_b, m), false, false);
        call(state, oracle, neg_mod(gamma_c, m), false, true);
    }
    if (trace) trace->oracle_calls = state.oracle_calls() - calls_before;
}

} // namespace catmv
