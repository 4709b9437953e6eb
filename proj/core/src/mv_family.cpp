#include "catmv/mv_family.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "catmv/errors.hpp"
#include "catmv/rng.hpp"

namespace catmv {

MultilinearPoly combined_poly(const MvParams &params) {
    const auto &basis = params.basis;
    std::vector<MultilinearPoly> per_prime;
    std::set<SubsetMask> support;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        per_prime.push_back(
            weight_indicator_poly(basis.prime(i), params.exponents[i], params.w, params.h_sets));
        for (const auto &[mono, c] : per_prime.back().terms()) support.insert(mono);
    }
    MultilinearPoly f(params.h_sets, basis.modulus());
    std::vector<std::uint64_t> residues(basis.size());
    for (const auto mono : support) {
        for (std::size_t i = 0; i < basis.size(); ++i) residues[i] = per_prime[i].coefficient(mono);
        f.add_term(mono, crt_combine(residues, basis));
    }
    return f;
}

std::pair<std::vector<Coord>, std::vector<Coord>> flip_transform(std::span<const Coord> u,
                                                                 std::span<const Coord> v,
                                                                 std::uint64_t modulus) {
    if (u.size() != v.size()) throw InputError("flip_transform: u and v differ in length");
    std::vector<Coord> u2(u.begin(), u.end()), v2;
    v2.reserve(v.size() + 1);
    for (const auto c : v) v2.push_back(static_cast<Coord>(neg_mod(c % modulus, modulus)));
    u2.push_back(1);
    v2.push_back(1);
    return {std::move(u2), std::move(v2)};
}

MvFamily::MvFamily(MvParams params)
    : params_(std::move(params)), combined_(combined_poly(params_)) {
    params_.validate();
    if (combined_.degree() > params_.degree_cap)
        throw InvariantViolation("combined polynomial degree exceeds the monomial cap");
    monomials_ = enumerate_subsets(params_.h_sets, params_.degree_cap);
    if (monomials_.size() + 1 != params_.dim)
        throw InvariantViolation("monomial count disagrees with the dimension");
    coefficients_.reserve(monomials_.size());
    for (const auto mono : monomials_)
        coefficients_.push_back(static_cast<Coord>(combined_.coefficient(mono)));
    const auto cached = std::min<std::uint64_t>(size(), set_cache_limit);
    sets_.reserve(cached);
    for (std::uint64_t i = 0; i < cached; ++i)
        sets_.push_back(index_to_set(i, params_.w, params_.h_sets));
}

SubsetMask MvFamily::set_of(std::uint64_t index) const {
    if (index >= size())
        throw InputError("family index " + std::to_string(index) + " >= N = " +
                         std::to_string(size()));
    if (index < sets_.size()) return sets_[index];
    return index_to_set(index, params_.w, params_.h_sets);
}

FamilyVectorStream MvFamily::stream(FamilySide side, std::uint64_t index) const {
    return FamilyVectorStream(this, set_of(index), side);
}
FamilyVectorStream MvFamily::u_stream(std::uint64_t i) const { return stream(FamilySide::U, i); }
FamilyVectorStream MvFamily::v_stream(std::uint64_t j) const { return stream(FamilySide::V, j); }

namespace {
std::vector<Coord> collect(const FamilyVectorStream &s) {
    std::vector<Coord> out(s.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<Coord>(s(k));
    return out;
}
} // namespace

std::vector<Coord> MvFamily::u_vector(std::uint64_t i) const { return collect(u_stream(i)); }
std::vector<Coord> MvFamily::v_vector(std::uint64_t j) const { return collect(v_stream(j)); }

std::vector<Coord> MvFamily::raw_u_vector(std::uint64_t i) const {
    const auto set = set_of(i);
    std::vector<Coord> out(monomials_.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = (monomials_[k] & ~set) == 0 ? coefficients_[k] : 0;
    return out;
}

std::vector<Coord> MvFamily::raw_v_vector(std::uint64_t j) const {
    const auto set = set_of(j);
    std::vector<Coord> out(monomials_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (monomials_[k] & ~set) == 0 ? 1 : 0;
    return out;
}

void MvFamily::write(std::ostream &out, std::uint64_t count) const {
    count = std::min(count, size());
    out << "mvfamily v1 " << params_.describe() << '\n';
    for (const auto side : {FamilySide::U, FamilySide::V}) {
        for (std::uint64_t i = 0; i < count; ++i) {
            out << (side == FamilySide::U ? "u " : "v ") << i;
            const auto s = stream(side, i);
            for (std::size_t k = 0; k < s.size(); ++k) out << ' ' << s(k);
            out << '\n';
        }
    }
}

MaterializedFamily materialize(const MvFamily &family, std::uint64_t count) {
    count = std::min(count, family.size());
    MaterializedFamily out{family.basis(), {}, {}};
    for (std::uint64_t i = 0; i < count; ++i) {
        out.u.push_back(family.u_vector(i));
        out.v.push_back(family.v_vector(i));
    }
    return out;
}

std::string FamilyReport::describe() const {
    std::ostringstream os;
    if (pass) {
        os << "pass (" << pairs_checked << " pairs)";
    } else {
        os << "FAIL at (i=" << violation->i << ", j=" << violation->j
           << "): <u_i, v_j> = " << violation->inner_product << ", " << violation->reason;
    }
    return os.str();
}

namespace {

// Returns an empty string when the pair satisfies both axioms.
std::string check_pair(std::uint64_t ip, bool diagonal, const PrimeBasis &basis) {
    for (const auto p : basis.primes())
        if (ip % p > 1)
            return "residue " + std::to_string(ip % p) + " mod " + std::to_string(p) +
                   " outside {0, 1}";
    if (diagonal && ip != 1) return "diagonal inner product is not 1";
    if (!diagonal && ip == 1) return "off-diagonal inner product is 1";
    return {};
}

template <typename DotFn>
FamilyReport run_checks(std::uint64_t n, VerifyMode mode, std::uint64_t samples,
                        std::uint64_t seed, const PrimeBasis &basis, DotFn &&inner) {
    FamilyReport report;
    auto visit = [&](std::uint64_t i, std::uint64_t j) {
        const auto ip = inner(i, j);
        ++report.pairs_checked;
        auto reason = check_pair(ip, i == j, basis);
        if (reason.empty()) return true;
        report.pass = false;
        report.violation = FamilyViolation{i, j, ip, std::move(reason)};
        return false;
    };
    if (mode == VerifyMode::Exhaustive) {
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = 0; j < n; ++j)
                if (!visit(i, j)) return report;
        return report;
    }
    for (std::uint64_t i = 0; i < n; ++i)
        if (!visit(i, i)) return report;
    SeededRng rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s)
        if (!visit(rng.below(n), rng.below(n))) return report;
    return report;
}

} // namespace

FamilyReport verify_family(const MaterializedFamily &family, VerifyMode mode,
                           std::uint64_t samples, std::uint64_t seed) {
    if (family.u.size() != family.v.size())
        throw InputError("verify_family: u and v collections differ in size");
    const auto m = family.basis.modulus();
    return run_checks(family.u.size(), mode, samples, seed, family.basis,
                      [&](std::uint64_t i, std::uint64_t j) {
                          return dot(std::span<const Coord>(family.u[i]),
                                     SpanSource{family.v[j]}, m);
                      });
}

FamilyReport verify_family(const MvFamily &family, VerifyMode mode, std::uint64_t samples,
                           std::uint64_t seed) {
    const auto m = family.modulus();
    std::uint64_t cached = UINT64_MAX;
    std::vector<Coord> u;
    return run_checks(family.size(), mode, samples, seed, family.basis(),
                      [&](std::uint64_t i, std::uint64_t j) {
                          if (i != cached) {
                              u = family.u_vector(i);
                              cached = i;
                          }
                          return dot(std::span<const Coord>(u), family.v_stream(j), m);
                      });
}

} // namespace catmv
