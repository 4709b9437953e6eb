#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "catmv/errors.hpp"
#include "catmv/instance.hpp"
#include "catmv/tapes.hpp"
#include "catmv/tree_eval.hpp"
#include "oracles.hpp"

using namespace catmv;

namespace {

std::uint64_t oracle_value(const TreeEvalInstance &in) {
    return oracle::tree_value(
        in.h, in.ell, in.fanin, [&](std::uint64_t i) { return in.leaves[i]; },
        [&](unsigned depth, std::uint64_t index, std::uint64_t key) {
            return in.table(NodePath{depth, index})[key];
        });
}

const std::array<TapeMode, 4> kTapes{TapeMode::Seeded, TapeMode::Zeros, TapeMode::Max,
                                     TapeMode::Alternating};

} // namespace

TEST(NodePath, Strings) {
    EXPECT_EQ(NodePath{}.to_string(2), "-");
    EXPECT_EQ(NodePath{}.child(2, 1).child(2, 0).to_string(2), "10");
    EXPECT_EQ(NodePath{}.child(3, 2).child(3, 1).index, 7u);
}

TEST(Instance, DeterministicGeneration) {
    EXPECT_EQ(gen_random_instance(2, 2, 2, 7), gen_random_instance(2, 2, 2, 7));
    EXPECT_NE(gen_random_instance(2, 2, 2, 7), gen_random_instance(2, 2, 2, 8));
    EXPECT_EQ(serialize_instance(gen_random_instance(2, 2, 2, 7)),
              serialize_instance(gen_random_instance(2, 2, 2, 7)));
}

TEST(Instance, SizeAccounting) {
    const auto in = gen_random_instance(1, 1, 2, 1);
    EXPECT_EQ(in.leaves.size(), 2u);
    EXPECT_EQ(in.tables.size(), 1u);
    EXPECT_EQ(in.tables[0].size(), 4u);
    EXPECT_EQ(in.input_bits(), 2u * 1 * 4);
    EXPECT_EQ(gen_random_instance(3, 2, 2, 1).input_bits(), 8u * 2 * 16);
    EXPECT_EQ(gen_random_instance(2, 1, 3, 1).input_bits(), 9u * 1 * 8);
}

TEST(Instance, TextRoundTrip) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto in = gen_random_instance(1 + seed % 3, 1 + seed % 2, 2 + seed % 3, seed);
        const auto text = serialize_instance(in);
        EXPECT_EQ(parse_instance(text), in);
        EXPECT_EQ(serialize_instance(parse_instance(text)), text);
    }
}

TEST(Instance, StructureOfSmallestFile) {
    const auto text = serialize_instance(gen_random_instance(1, 1, 2, 3));
    std::istringstream in(text);
    std::string line;
    int nodes = 0, leaves = 0;
    while (std::getline(in, line)) {
        if (line.rfind("node ", 0) == 0) ++nodes;
        if (line.rfind("leaf ", 0) == 0) ++leaves;
    }
    EXPECT_EQ(nodes, 1);
    EXPECT_EQ(leaves, 2);
}

TEST(Instance, ParserRejectsMalformedText) {
    const auto good = serialize_instance(gen_random_instance(2, 1, 2, 3));
    EXPECT_THROW(parse_instance(std::string("treeeval v2 h=1 ell=1 r=2\n")), ParseError);
    EXPECT_THROW(parse_instance(good.substr(0, good.size() / 2)), ParseError);
    auto upper = good;
    for (auto &c : upper)
        if (c == 'a') c = 'A';
    EXPECT_THROW(parse_instance(upper), ParseError);
    auto extra = good + "leaf 00 1\n";
    EXPECT_THROW(parse_instance(extra), ParseError);
    try {
        parse_instance(std::string("treeeval v1 h=1 ell=1 r=2\nleaf 0 1\nleaf 1 7\n"));
        FAIL() << "out-of-range leaf accepted";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Instance, BruteForceMatchesOracle) {
    for (unsigned r : {2u, 3u, 4u})
        for (unsigned h = 1; h <= 3; ++h)
            for (unsigned ell = 1; ell <= 2; ++ell)
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    if (r * ell > 6 && h == 3) continue;
                    const auto in = gen_random_instance(h, ell, r, seed);
                    ASSERT_EQ(eval_bruteforce(in), oracle_value(in));
                }
}

TEST(Instance, ConstantTables) {
    auto in = TreeEvalInstance::zeros(3, 2, 2);
    for (auto &t : in.tables.front()) t = 3;
    EXPECT_EQ(eval_bruteforce(in), 3u);
    EXPECT_EQ(eval_bruteforce(TreeEvalInstance::zeros(2, 2, 2)), 0u);
}

TEST(Fanin, ReductionPreservesValue) {
    for (unsigned r : {2u, 3u, 4u, 5u})
        for (unsigned h = 1; h <= 2; ++h)
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto in = gen_random_instance(h, 1, r, seed);
                const auto red = reduce_fanin(in);
                const auto g = static_cast<unsigned>(std::ceil(std::log2(r)));
                EXPECT_EQ(red.fanin, 2u);
                EXPECT_EQ(red.h, h * g);
                EXPECT_EQ(red.ell, (r + 1) / 2);
                EXPECT_NO_THROW(red.validate());
                ASSERT_EQ(eval_bruteforce(red), eval_bruteforce(in))
                    << "r=" << r << " h=" << h << " seed=" << seed;
            }
}

TEST(TreeEval, AnalyticCallCount) {
    EXPECT_EQ(analytic_oracle_calls(1, 2), 136u);
    EXPECT_EQ(analytic_oracle_calls(2, 2), 9384u);
    EXPECT_EQ(analytic_oracle_calls(3, 2), 638248u);
    EXPECT_EQ(analytic_oracle_calls(4, 1), 336840u);
}

TEST(TreeEval, MatchesBruteForceOnAllTapes) {
    for (const auto &primes : std::vector<std::vector<std::uint64_t>>{{3}, {3, 5}}) {
        const PrimeBasis basis(primes);
        const MvFamily fam(select_params(2, basis));
        for (unsigned h = 1; h <= 2; ++h)
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                const auto in = gen_random_instance(h, 2, 2, seed);
                const auto expected = eval_bruteforce(in);
                for (auto mode : kTapes) {
                    auto st = make_state(basis, fam.dim(), mode, seed);
                    const auto res = eval_catalytic(in, fam, st);
                    EXPECT_EQ(res.value, expected);
                    EXPECT_TRUE(res.restore.restored) << res.restore.describe();
                    EXPECT_TRUE(st.assert_restored_all());
                    EXPECT_EQ(res.oracle_calls, analytic_oracle_calls(h, primes.size()));
                    EXPECT_TRUE(st.ledger().well_nested());
                }
            }
    }
}

TEST(TreeEval, ValueSlotModesAgree) {
    const PrimeBasis basis({3});
    const MvFamily fam(select_params(2, basis));
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto in = gen_random_instance(3, 2, 2, seed);
        EvalOptions free_slot;
        free_slot.value_slot = ValueSlotMode::FreeSpaceBacked;
        auto s1 = make_state(basis, fam.dim(), TapeMode::Seeded, seed);
        auto s2 = make_state(basis, fam.dim(), TapeMode::Seeded, seed);
        const auto r1 = eval_catalytic(in, fam, s1);
        const auto r2 = eval_catalytic(in, fam, s2, free_slot);
        EXPECT_EQ(r1.value, eval_bruteforce(in));
        EXPECT_EQ(r2.value, r1.value);
        EXPECT_TRUE(r2.restore.restored);
        EXPECT_EQ(r1.oracle_calls, r2.oracle_calls);
    }
}

TEST(TreeEval, ZeroInstanceLeavesTapeUntouched) {
    const PrimeBasis basis({3, 5});
    const MvFamily fam(select_params(1, basis));
    const auto in = TreeEvalInstance::zeros(2, 1, 2);
    auto st = make_state(basis, fam.dim(), TapeMode::Max);
    const auto res = eval_catalytic(in, fam, st);
    EXPECT_EQ(res.value, 0u);
    EXPECT_TRUE(res.restore.restored);
}

TEST(TreeEval, FreeSpaceGrowsLinearlyInHeight) {
    const PrimeBasis basis({3});
    const MvFamily fam(select_params(1, basis));
    std::vector<std::uint64_t> peaks;
    for (unsigned h = 1; h <= 4; ++h) {
        auto st = make_state(basis, fam.dim(), TapeMode::Seeded, h);
        peaks.push_back(eval_catalytic(gen_random_instance(h, 1, 2, h), fam, st).peak_free_bits);
    }
    // Each level adds the same frame; only the counter widths grow, logarithmically.
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        EXPECT_GT(peaks[i], peaks[i - 1]);
        const auto step = peaks[i] - peaks[i - 1], first = peaks[1] - peaks[0];
        EXPECT_LE(step > first ? step - first : first - step, 2u);
    }
}

TEST(TreeEval, RejectsBadInputs) {
    const PrimeBasis basis({3});
    const MvFamily fam(select_params(1, basis));
    auto st = make_state(basis, fam.dim(), TapeMode::Zeros);
    EXPECT_THROW(eval_catalytic(gen_random_instance(1, 1, 3, 0), fam, st), InputError);
    EXPECT_THROW(eval_catalytic(gen_random_instance(1, 3, 2, 0), fam, st), InputError);
    auto wrong = make_state(basis, fam.dim() + 1, TapeMode::Zeros);
    EXPECT_THROW(eval_catalytic(gen_random_instance(1, 1, 2, 0), fam, wrong), InputError);
}

TEST(Stats, LineRoundTrip) {
    StatsRecord rec;
    rec.id = "run7";
    rec.h = 3;
    rec.ell = 2;
    rec.t = 2;
    rec.m = 15;
    rec.d = 65;
    rec.oracle_calls = 638248;
    rec.peak_free_bits = 189;
    rec.catalytic_bits = 780;
    rec.wall_time_ms = 12.5;
    rec.restored = true;
    rec.value = 3;
    const auto line = rec.to_line();
    const auto back = StatsRecord::parse(line);
    EXPECT_EQ(back.to_line(), line);
    EXPECT_EQ(back.oracle_calls, 638248u);
    EXPECT_EQ(back.value, 3u);
    EXPECT_THROW(StatsRecord::parse("id=x h=banana"), InputError);
}
