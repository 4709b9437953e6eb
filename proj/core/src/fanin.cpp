#include "catmv/errors.hpp"
#include "catmv/instance.hpp"

namespace catmv {

namespace {

struct Reducer {
    const TreeEvalInstance &in;
    TreeEvalInstance &out;
    unsigned gadget_height;

    std::uint64_t field(std::uint64_t packed, unsigned i) const {
        return (packed >> (i * in.ell)) & ((std::uint64_t{1} << in.ell) - 1);
    }

    /// Gadget node covering real children [lo, lo + n) of original node `u`,
    /// at relative depth j and output position `pos`.
    void gadget(NodePath u, unsigned lo, unsigned n, unsigned j, NodePath pos) {
        if (j == gadget_height) {
            if (n == 0) return; // dummy subtree: already all zero
            const auto child = u.child(in.fanin, lo);
            if (child.length == in.h)
                out.leaves[pos.index] = in.leaves[child.index];
            else
                gadget(child, 0, in.fanin, 0, pos);
            return;
        }
        if (n == 0) return;
        const unsigned nl = (n + 1) / 2, nr = n / 2;
        gadget(u, lo, nl, j + 1, pos.child(2, 0));
        gadget(u, lo + nl, nr, j + 1, pos.child(2, 1));

        const unsigned width = out.ell;
        auto table = out.table_mut(pos);
        const auto f = j == 0 ? in.table(u) : std::span<const std::uint32_t>{};
        for (std::uint64_t left = 0; left < (std::uint64_t{1} << width); ++left) {
            for (std::uint64_t right = 0; right < (std::uint64_t{1} << width); ++right) {
                std::uint64_t packed = 0;
                for (unsigned i = 0; i < nl; ++i) packed |= field(left, i) << (i * in.ell);
                for (unsigned i = 0; i < nr; ++i) packed |= field(right, i) << ((nl + i) * in.ell);
                std::uint64_t value = packed;
                if (j == 0) {
                    std::uint64_t key = 0;
                    for (unsigned c = 0; c < in.fanin; ++c) key = (key << in.ell) | field(packed, c);
                    value = f[key];
                }
                table[(left << width) | right] = static_cast<std::uint32_t>(value);
            }
        }
    }
};

} // namespace

TreeEvalInstance reduce_fanin(const TreeEvalInstance &instance) {
    instance.validate();
    const unsigned r = instance.fanin;
    unsigned g = 0;
    while ((1u << g) < r) ++g;
    const unsigned ell2 = instance.ell * ((r + 1) / 2);
    if (2 * ell2 > TreeEvalInstance::max_table_bits)
        throw InputError("reduce_fanin: widened label " + std::to_string(ell2) +
                         " bits is too large for binary tables");
    auto out = TreeEvalInstance::zeros(instance.h * g, ell2, 2);
    Reducer red{instance, out, g};
    red.gadget({0, 0}, 0, r, 0, {0, 0});
    return out;
}

} // namespace catmv
