#include <gtest/gtest.h>

#include <sstream>

#include "catmv/bit_tape.hpp"
#include "catmv/catalytic_state.hpp"
#include "catmv/errors.hpp"
#include "catmv/tapes.hpp"

using namespace catmv;

namespace {

const std::array<Register, 3> kAll{Register::X, Register::Y, Register::Z};

} // namespace

TEST(CatalyticState, AddScaledExample) {
    CatalyticState st(PrimeBasis({3, 5}), {2}, {0}, {0});
    const std::vector<Coord> src{3};
    st.add_scaled(Register::X, 1, SpanSource{src});
    EXPECT_EQ(st.reg(Register::X)[0], 5u);
    st.add_scaled(Register::X, 14, SpanSource{src});
    EXPECT_EQ(st.reg(Register::X)[0], 2u);
    EXPECT_TRUE(st.assert_restored_all());
}

TEST(CatalyticState, RejectsBadInput) {
    const PrimeBasis b({3, 5});
    EXPECT_THROW(CatalyticState(b, {15}, {0}, {0}), InputError);
    EXPECT_THROW(CatalyticState(b, {1, 2}, {0}, {0}), InputError);
    CatalyticState st(b, 2);
    const std::vector<Coord> src{1};
    EXPECT_THROW(st.add_scaled(Register::Y, 1, SpanSource{src}), InputError);
}

TEST(CatalyticState, SwapIsAnInvolution) {
    CatalyticState st(PrimeBasis({3}), {1, 2}, {0, 1}, {2, 2});
    st.swap_registers(Register::X, Register::Z);
    EXPECT_EQ(st.reg(Register::X)[0], 2u);
    EXPECT_FALSE(st.assert_restored_all());
    st.swap_registers(Register::X, Register::Z);
    EXPECT_TRUE(st.assert_restored_all());
}

TEST(CatalyticState, RestoreReportLocatesMutation) {
    auto st = make_state(PrimeBasis({3, 5}), 10, TapeMode::Seeded, 4);
    const auto before = st.reg(Register::Y)[7];
    st.reg_mut(Register::Y)[7] = static_cast<Coord>((before + 3) % 15);
    const auto rep = st.assert_restored_all();
    EXPECT_FALSE(rep.restored);
    EXPECT_EQ(rep.reg, Register::Y);
    EXPECT_EQ(rep.coordinate, 7u);
    EXPECT_EQ(rep.expected, before);
    EXPECT_TRUE(st.assert_restored(std::array{Register::X, Register::Z}));
    EXPECT_FALSE(rep.describe().empty());
}

TEST(CatalyticState, SnapshotRoundTrip) {
    auto st = make_state(PrimeBasis({3, 7}), 12, TapeMode::Seeded, 11);
    std::stringstream buf;
    st.write_snapshot(buf);
    const auto back = CatalyticState::read_snapshot(buf);
    EXPECT_EQ(back.basis(), st.basis());
    for (auto r : kAll) {
        const auto a = st.reg(r), b = back.reg(r);
        EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
    std::istringstream bad("garbage\n");
    EXPECT_THROW(CatalyticState::read_snapshot(bad), ParseError);
}

TEST(CatalyticState, TapeModes) {
    const PrimeBasis b({3, 5});
    const auto z = make_state(b, 4, TapeMode::Zeros);
    const auto mx = make_state(b, 4, TapeMode::Max);
    const auto alt = make_state(b, 3, TapeMode::Alternating);
    for (auto r : kAll)
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_EQ(z.reg(r)[k], 0u);
            EXPECT_EQ(mx.reg(r)[k], 14u);
        }
    EXPECT_EQ(alt.reg(Register::X)[0], 0u);
    EXPECT_EQ(alt.reg(Register::X)[1], 14u);
    EXPECT_EQ(alt.reg(Register::Y)[0], 14u); // continues across registers
    const auto s1 = make_state(b, 8, TapeMode::Seeded, 5), s2 = make_state(b, 8, TapeMode::Seeded, 5);
    for (auto r : kAll) {
        const auto a = s1.reg(r), c = s2.reg(r);
        EXPECT_TRUE(std::equal(a.begin(), a.end(), c.begin(), c.end()));
    }
    EXPECT_THROW(parse_tape_mode("nope"), InputError);
    EXPECT_EQ(parse_tape_mode(tape_mode_name(TapeMode::Max)), TapeMode::Max);
}

TEST(SpaceLedger, NestingAndPeak) {
    SpaceLedger l;
    {
        auto a = l.open("a", 10);
        {
            auto b = l.open("b", 5);
            EXPECT_EQ(l.current_bits(), 15u);
        }
        auto c = l.open("c", 2);
        EXPECT_EQ(l.current_bits(), 12u);
    }
    EXPECT_EQ(l.current_bits(), 0u);
    EXPECT_EQ(l.peak_bits(), 15u);
    ASSERT_EQ(l.peak_stack().size(), 2u);
    EXPECT_TRUE(l.well_nested());

    auto x = l.open("x", 1);
    auto y = l.open("y", 1);
    x.close();
    EXPECT_FALSE(l.well_nested());
}

TEST(BitTape, ReadWrite) {
    BitTape t(130);
    t.write(60, 10, 0x2ab);
    EXPECT_EQ(t.read(60, 10), 0x2abu);
    EXPECT_TRUE(t.bit(60));
    EXPECT_FALSE(t.bit(62));
    t.set_bit(129, true);
    EXPECT_EQ(t.read(120, 10), 0x200u);
}

namespace {

void expect_round_trip(const BitTape &tape, const BitTapeLayout &layout) {
    const auto enc = encode_tape(tape, layout);
    ASSERT_EQ(enc.values.size(), layout.slots);
    ASSERT_LT(enc.offset, layout.slot_span());
    for (std::size_t i = 0; i < layout.slots; ++i) {
        ASSERT_LT(enc.values[i], layout.modulus);
        const auto shifted = (tape.read(i * layout.slot_bits, layout.slot_bits) + enc.offset) %
                             layout.slot_span();
        ASSERT_LT(shifted, layout.valid_bound());
        ASSERT_EQ(shifted % layout.modulus, enc.values[i]);
    }
    EXPECT_EQ(decode_tape(enc, layout), tape);
}

} // namespace

TEST(BitTape, EncodeDecodeRoundTrip) {
    for (std::uint64_t m : {3u, 15u, 105u}) {
        for (std::size_t dim : {1u, 9u, 65u}) {
            const auto layout = register_tape_layout(m, dim);
            ASSERT_EQ(layout.slots, 3 * dim);
            expect_round_trip(BitTape::filled(layout.total_bits(), false), layout);
            expect_round_trip(BitTape::filled(layout.total_bits(), true), layout);
            expect_round_trip(make_bit_tape(layout.total_bits(), TapeMode::Alternating), layout);
            for (std::uint64_t seed = 0; seed < 30; ++seed)
                expect_round_trip(BitTape::random(layout.total_bits(), seed), layout);
        }
    }
}

TEST(BitTape, ModifiedRegistersRoundTripAfterUndo) {
    const PrimeBasis b({3, 5});
    const auto layout = register_tape_layout(15, 9);
    const auto tape = BitTape::random(layout.total_bits(), 77);
    auto enc = encode_tape(tape, layout);
    auto st = state_from_encoding(enc, b);
    const std::vector<Coord> src{1, 2, 3, 4, 5, 6, 7, 8, 9};
    st.add_scaled(Register::Z, 4, SpanSource{src});
    store_registers(st, enc);
    EXPECT_NE(decode_tape(enc, layout), tape);
    st.add_scaled(Register::Z, 11, SpanSource{src});
    store_registers(st, enc);
    EXPECT_EQ(decode_tape(enc, layout), tape);
}
