#pragma once

#include <cstdint>
#include <vector>

namespace catmv {

/// Subsets of a universe of at most 64 elements, as bitmasks.
using SubsetMask = std::uint64_t;

/// C(n, k); 0 when k > n. Throws InputError if the value overflows 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// sum_{j=0}^{k} C(n, j).
std::uint64_t binomial_prefix(std::uint64_t n, std::uint64_t k);

/**
 * Combinatorial number system: the w-subset {c_w > ... > c_1} of
 * {0, ..., universe-1} with K = C(c_w, w) + ... + C(c_1, 1), recovered by
 * the greedy choice of the largest c_i with C(c_i, i) <= remaining K.
 *
 * Throws InputError if K >= C(universe, w) or universe > 64.
 */
SubsetMask index_to_set(std::uint64_t index, unsigned w, unsigned universe);

/// Inverse of index_to_set.
std::uint64_t set_to_index(SubsetMask set);

/// Elements of a mask in ascending order.
std::vector<unsigned> set_elements(SubsetMask set);

/// Next mask with the same popcount in increasing numeric (= colex) order.
inline SubsetMask next_same_size(SubsetMask s) {
    const SubsetMask lowest = s & (~s + 1);
    const SubsetMask ripple = s + lowest;
    return ripple | (((ripple ^ s) >> 2) / lowest);
}

/**
 * All subsets of {0..universe-1} of size <= max_size, ordered by size and
 * then by combinatorial index within a size. This order is the monomial
 * coordinate order of the matching-vector family.
 */
std::vector<SubsetMask> enumerate_subsets(unsigned universe, unsigned max_size);

} // namespace catmv
