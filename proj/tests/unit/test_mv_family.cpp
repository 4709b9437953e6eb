#include <gtest/gtest.h>

#include <bit>
#include <sstream>

#include "catmv/errors.hpp"
#include "catmv/mv_family.hpp"
#include "oracles.hpp"

using namespace catmv;

namespace {

const std::vector<std::vector<std::uint64_t>> kBases{{3}, {5}, {3, 5}, {3, 7}};

// f_{T_i}(1_{T_j}) evaluated straight from the polynomial: only monomials inside
// both sets survive.
std::uint64_t restricted_eval(const MultilinearPoly &f, SubsetMask ti, SubsetMask tj) {
    std::uint64_t acc = 0;
    for (const auto &[mono, c] : f.terms())
        if ((mono & ~ti) == 0 && (mono & ~tj) == 0) acc = (acc + c) % f.modulus();
    return acc;
}

} // namespace

TEST(MvParams, Examples) {
    const auto p1 = select_params(1, PrimeBasis({3, 5}));
    EXPECT_EQ(p1.w, 2u);
    EXPECT_EQ(p1.h_sets, 3u);
    EXPECT_EQ(p1.family_size, 3u);
    EXPECT_EQ(p1.dim, 9u);

    const auto p2 = select_params(2, PrimeBasis({3, 5}));
    EXPECT_EQ(p2.w, 3u);
    EXPECT_EQ(p2.h_sets, 6u);
    EXPECT_EQ(p2.family_size, 20u);
    EXPECT_EQ(p2.dim, 65u);
    EXPECT_EQ(p2.describe(), "primes=3,5 w=3 h_sets=6 e=1,1 D=4 cap=6 N=20 d=65 ell=2");

    const auto p3 = select_params(2, PrimeBasis({3}));
    EXPECT_EQ(p3.family_size, 6u);
    EXPECT_EQ(p3.dim, 17u);

    EXPECT_THROW(select_params(0, PrimeBasis({3})), InputError);
}

TEST(MvParams, InvariantsAcrossBases) {
    for (const auto &primes : kBases) {
        const PrimeBasis basis(primes);
        for (unsigned ell = 1; ell <= 5; ++ell) {
            const auto p = select_params(ell, basis);
            EXPECT_NO_THROW(p.validate());
            EXPECT_GE(p.family_size, std::uint64_t{1} << ell);
            EXPECT_EQ(p.family_size, binomial(p.h_sets, p.w));
            EXPECT_GE(p.degree_cap, std::min(p.max_degree, p.h_sets));
            EXPECT_LE(MvFamily(p).combined().degree(), p.degree_cap);
            EXPECT_EQ(p.dim, binomial_prefix(p.h_sets, p.degree_cap) + 1);
        }
    }
}

TEST(MvFamily, ExhaustiveAxioms) {
    for (const auto &primes : kBases) {
        for (unsigned ell = 1; ell <= 3; ++ell) {
            const MvFamily fam(select_params(ell, PrimeBasis(primes)));
            const auto report = verify_family(fam);
            EXPECT_TRUE(report.pass) << fam.params().describe() << ": " << report.describe();
            EXPECT_EQ(report.pairs_checked, fam.size() * fam.size());
        }
    }
}

TEST(MvFamily, AxiomsByIndependentDot) {
    const MvFamily fam(select_params(2, PrimeBasis({3, 5})));
    const auto m = fam.modulus();
    for (std::uint64_t i = 0; i < fam.size(); ++i) {
        const auto u = fam.u_vector(i);
        for (std::uint64_t j = 0; j < fam.size(); ++j) {
            const auto ip = oracle::dot(u, fam.v_vector(j), m);
            EXPECT_EQ(ip == 1, i == j) << i << "," << j;
            for (auto p : fam.basis().primes()) EXPECT_LE(ip % p, 1u);
        }
    }
}

TEST(MvFamily, RawInnerProductIsRestrictedPolynomial) {
    const MvFamily fam(select_params(2, PrimeBasis({3, 5})));
    const auto m = fam.modulus();
    for (std::uint64_t i = 0; i < fam.size(); ++i)
        for (std::uint64_t j = 0; j < fam.size(); ++j)
            ASSERT_EQ(oracle::dot(fam.raw_u_vector(i), fam.raw_v_vector(j), m),
                      restricted_eval(fam.combined(), fam.set_of(i), fam.set_of(j)));
}

TEST(MvFamily, SetsAreDistinctAndOfWeightW) {
    const MvFamily fam(select_params(3, PrimeBasis({3, 5})));
    std::vector<SubsetMask> seen;
    for (std::uint64_t i = 0; i < fam.size(); ++i) {
        const auto s = fam.set_of(i);
        EXPECT_EQ(static_cast<unsigned>(std::popcount(s)), fam.params().w);
        EXPECT_EQ(s >> fam.params().h_sets, 0u);
        seen.push_back(s);
    }
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
    EXPECT_THROW(fam.set_of(fam.size()), InputError);
}

TEST(MvFamily, StreamsMatchMaterialized) {
    const MvFamily fam(select_params(2, PrimeBasis({3, 5})));
    const auto mat = materialize(fam, fam.size());
    for (std::uint64_t i = 0; i < fam.size(); ++i) {
        const auto us = fam.u_stream(i), vs = fam.v_stream(i);
        ASSERT_EQ(us.size(), fam.dim());
        for (std::size_t k = 0; k < fam.dim(); ++k) {
            ASSERT_EQ(us(k), mat.u[i][k]);
            ASSERT_EQ(vs(k), mat.v[i][k]);
        }
    }
}

TEST(MvFamily, FlipIdentity) {
    const MvFamily fam(select_params(1, PrimeBasis({3, 5})));
    const auto m = fam.modulus();
    for (std::uint64_t i = 0; i < fam.size(); ++i) {
        const auto [u, v] = flip_transform(fam.raw_u_vector(i), fam.raw_v_vector(i), m);
        EXPECT_EQ(u, fam.u_vector(i));
        EXPECT_EQ(v, fam.v_vector(i));
        for (std::uint64_t j = 0; j < fam.size(); ++j) {
            const auto raw = oracle::dot(fam.raw_u_vector(i), fam.raw_v_vector(j), m);
            const auto post = oracle::dot(fam.u_vector(i), fam.v_vector(j), m);
            EXPECT_EQ(post, (1 + m - raw) % m);
        }
    }
}

TEST(MvFamily, CorruptionIsDetected) {
    const MvFamily fam(select_params(2, PrimeBasis({3, 5})));
    auto mat = materialize(fam, fam.size());
    ASSERT_TRUE(verify_family(mat).pass);
    mat.u[4][0] = (mat.u[4][0] + 1) % 15;
    const auto report = verify_family(mat);
    EXPECT_FALSE(report.pass);
    ASSERT_TRUE(report.violation.has_value());
    EXPECT_TRUE(report.violation->i == 4 || report.violation->j == 4);
}

TEST(MvFamily, SampledModeChecksDiagonal) {
    const MvFamily fam(select_params(6, PrimeBasis({3, 5})));
    const auto report = verify_family(fam, VerifyMode::Sampled, 500, 3);
    EXPECT_TRUE(report.pass) << report.describe();
    EXPECT_GE(report.pairs_checked, 500u);
}

TEST(MvFamily, WriteHasOneLinePerVector) {
    const MvFamily fam(select_params(1, PrimeBasis({3})));
    std::ostringstream out;
    fam.write(out, 2);
    std::istringstream in(out.str());
    std::string line;
    int u = 0, v = 0;
    while (std::getline(in, line)) {
        if (line.rfind("u ", 0) == 0) ++u;
        if (line.rfind("v ", 0) == 0) ++v;
    }
    EXPECT_EQ(u, 2);
    EXPECT_EQ(v, 2);
}
