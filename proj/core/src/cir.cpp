#include "catmv/cir.hpp"

namespace catmv {

void CirOracle::apply(RingElement &target, bool sigma, bool mu, std::uint64_t gamma,
                      std::uint64_t j) {
    ++calls_;
    scheme_->ring().add_scaled(target, gamma, scheme_->det_query(sigma ? b_ : a_, j, mu));
}

namespace {

void check_inputs(const CirScheme &scheme, std::span<const RingElement> db, std::uint64_t a,
                  std::uint64_t b) {
    const auto n = scheme.index_count();
    if (db.size() != n * n)
        throw InputError("cir: database must have n_DB^2 = " + std::to_string(n * n) +
                         " records, got " + std::to_string(db.size()));
    if (a >= n || b >= n) throw InputError("cir: index out of range");
    for (const auto &rec : db)
        if (!scheme.ring().contains(rec)) throw InputError("cir: database record not in the ring");
}

} // namespace

RingElement cir_retrieve(const CirScheme &scheme, std::span<const RingElement> db,
                         std::uint64_t a, std::uint64_t b, RingElement x, RingElement y,
                         CirState *state_out) {
    check_inputs(scheme, db, a, b);
    const auto &ring = scheme.ring();
    if (!ring.contains(x) || !ring.contains(y)) throw InputError("cir: mask not in the ring");
    const auto x0 = x, y0 = y;
    CirOracle oracle(scheme, a, b);
    const auto state = scheme.get_state(x, y, oracle);
    if (x != x0 || y != y0) throw InvariantViolation("cir: GetState did not restore x and y");
    auto total = ring.zero();
    for (std::uint64_t j = 0; j < scheme.servers(); ++j) {
        const auto q = ring.add(x, scheme.det_query(a, j, false));
        const auto q2 = ring.add(y, scheme.det_query(b, j, true));
        ring.add_scaled(total, 1, scheme.answer_and_reconstruct(db, state, j, q, q2));
    }
    if (state_out) *state_out = state;
    return total;
}

void cir_one_level(const CirScheme &scheme, std::span<const RingElement> db, std::uint64_t a,
                   std::uint64_t b, RingElement &x, RingElement &y, RingElement &z) {
    check_inputs(scheme, db, a, b);
    const auto &ring = scheme.ring();
    if (!ring.contains(x) || !ring.contains(y) || !ring.contains(z))
        throw InputError("cir: register not in the ring");
    CirOracle oracle(scheme, a, b);
    const auto state = scheme.get_state(x, y, oracle);
    const auto minus_one = ring.modulus - 1;
    for (std::uint64_t j = 0; j < scheme.servers(); ++j) {
        oracle.apply(x, false, false, 1, j);
        oracle.apply(y, true, true, 1, j);
        ring.add_scaled(z, 1, scheme.answer_and_reconstruct(db, state, j, x, y));
        oracle.apply(x, false, false, minus_one, j);
        oracle.apply(y, true, true, minus_one, j);
    }
}

} // namespace catmv
