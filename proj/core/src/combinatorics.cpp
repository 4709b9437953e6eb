#include "catmv/combinatorics.hpp"
#include "catmv/modmath.hpp"

#include <bit>
#include <string>

#include "catmv/errors.hpp"

namespace catmv {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw InputError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t binomial_prefix(std::uint64_t n, std::uint64_t k) {
    std::uint64_t total = 0;
    for (std::uint64_t j = 0; j <= k && j <= n; ++j) {
        const auto c = binomial(n, j);
        if (total > UINT64_MAX - c) throw InputError("binomial prefix overflows 64 bits");
        total += c;
    }
    return total;
}

SubsetMask index_to_set(std::uint64_t index, unsigned w, unsigned universe) {
    if (universe > 64) throw InputError("universe larger than 64 elements");
    if (w > universe || index >= binomial(universe, w))
        throw InputError("index " + std::to_string(index) + " out of range for C(" +
                         std::to_string(universe) + ", " + std::to_string(w) + ")");
    SubsetMask set = 0;
    std::uint64_t remaining = index;
    unsigned upper = universe; // c_i < upper
    for (unsigned i = w; i >= 1; --i) {
        unsigned c = upper - 1;
        while (binomial(c, i) > remaining) --c;
        remaining -= binomial(c, i);
        set |= SubsetMask{1} << c;
        upper = c;
    }
    return set;
}

std::uint64_t set_to_index(SubsetMask set) {
    std::uint64_t index = 0;
    unsigned i = 0;
    for (const auto c : set_elements(set)) index += binomial(c, ++i);
    return index;
}

std::vector<unsigned> set_elements(SubsetMask set) {
    std::vector<unsigned> out;
    out.reserve(static_cast<std::size_t>(std::popcount(set)));
    while (set != 0) {
        out.push_back(static_cast<unsigned>(std::countr_zero(set)));
        set &= set - 1;
    }
    return out;
}

std::vector<SubsetMask> enumerate_subsets(unsigned universe, unsigned max_size) {
    if (universe > 63) throw InputError("monomial universe limited to 63 variables");
    if (max_size > universe) max_size = universe;
    std::vector<SubsetMask> out;
    out.reserve(binomial_prefix(universe, max_size));
    const SubsetMask limit = SubsetMask{1} << universe;
    for (unsigned k = 0; k <= max_size; ++k) {
        if (k == 0) {
            out.push_back(0);
            continue;
        }
        for (SubsetMask s = (SubsetMask{1} << k) - 1; s < limit; s = next_same_size(s))
            out.push_back(s);
    }
    return out;
}

} // namespace catmv
