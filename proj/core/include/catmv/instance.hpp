#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace catmv {

/// Position in the tree: a string over {0..r-1}, stored as its base-r value.
struct NodePath {
    unsigned length = 0;
    std::uint64_t index = 0;

    NodePath child(unsigned fanin, unsigned symbol) const {
        return {length + 1, index * fanin + symbol};
    }
    /// "-" for the root, otherwise the digits, first symbol leftmost.
    std::string to_string(unsigned fanin) const;
    friend bool operator==(const NodePath &, const NodePath &) = default;
};

/**
 * A full r-ary TreeEval instance. Leaves sit at depth h; every node above
 * carries a table with 2^{r ell} entries indexed by the children's values
 * concatenated, child 0 most significant.
 */
struct TreeEvalInstance {
    unsigned h = 0;
    unsigned ell = 0;
    unsigned fanin = 2;
    std::vector<std::uint32_t> leaves;                ///< r^h values, by path index
    std::vector<std::vector<std::uint32_t>> tables;   ///< per depth: r^depth tables back to back

    static constexpr unsigned max_fanin = 10;
    /// r * ell is capped so a table stays addressable in memory.
    static constexpr unsigned max_table_bits = 24;

    std::uint64_t nodes_at(unsigned depth) const;
    std::uint64_t table_size() const noexcept { return std::uint64_t{1} << (fanin * ell); }
    std::span<const std::uint32_t> table(NodePath node) const;
    std::span<std::uint32_t> table_mut(NodePath node);

    /// Number of bits in the input: r^h ell 2^{r ell}.
    std::uint64_t input_bits() const;

    /// All zero leaves and tables of the right shapes. Throws InputError.
    static TreeEvalInstance zeros(unsigned h, unsigned ell, unsigned fanin);

    /// Throws InputError naming the first inconsistency.
    void validate() const;

    friend bool operator==(const TreeEvalInstance &, const TreeEvalInstance &) = default;
};

/// Deterministic random instance from a seed.
TreeEvalInstance gen_random_instance(unsigned h, unsigned ell, unsigned fanin, std::uint64_t seed);

/// Bottom-up evaluation of the root value, any fanin.
std::uint64_t eval_bruteforce(const TreeEvalInstance &instance);

/// Text format: header `treeeval v1 h=.. ell=.. r=..`, `leaf <path> <hex>` lines,
/// then `node <path> <hex>...` lines by (length, lex); the root path is "-".
void write_instance(std::ostream &out, const TreeEvalInstance &instance);
std::string serialize_instance(const TreeEvalInstance &instance);
/// Throws ParseError with the line of the first malformation.
TreeEvalInstance parse_instance(std::istream &in);
TreeEvalInstance parse_instance(const std::string &text);

/**
 * Rewrites a fanin-r instance as a binary one of height h * ceil(log2 r) and
 * label width ell * ceil(r / 2): every node becomes a binary gadget whose
 * inner nodes concatenate child values and whose root applies the original
 * table. Unused gadget slots hold all-zero subtrees.
 *
 * Throws InputError if the widened tables would exceed max_table_bits.
 */
TreeEvalInstance reduce_fanin(const TreeEvalInstance &instance);

} // namespace catmv
