#pragma once

#include <cstdint>
#include <vector>

namespace catmv {

/**
 * Cooperative accounting of free (non-catalytic) work space.
 *
 * Procedures declare what they keep in free space by opening labeled scopes
 * sized in bits. Scopes nest strictly LIFO; the ledger tracks the current
 * total and the peak. This measures the algorithm's design, not the host's
 * memory use.
 */
class SpaceLedger {
public:
    struct Allocation {
        const char *label = ""; ///< static string
        std::uint64_t bits = 0;
    };

    /// RAII handle for one open scope. Closing out of LIFO order marks the
    /// ledger as violated instead of throwing from a destructor.
    class Scope {
    public:
        Scope() = default;
        Scope(Scope &&other) noexcept;
        Scope &operator=(Scope &&other) noexcept;
        Scope(const Scope &) = delete;
        Scope &operator=(const Scope &) = delete;
        ~Scope() { close(); }

        void close() noexcept;

    private:
        friend class SpaceLedger;
        Scope(SpaceLedger *ledger, std::size_t depth) : ledger_(ledger), depth_(depth) {}
        SpaceLedger *ledger_ = nullptr;
        std::size_t depth_ = 0;
    };

    /// `label` must outlive the ledger (use string literals).
    [[nodiscard]] Scope open(const char *label, std::uint64_t bits);

    std::uint64_t current_bits() const noexcept { return current_; }
    std::uint64_t peak_bits() const noexcept { return peak_; }
    std::size_t depth() const noexcept { return stack_.size(); }

    /// Scope stack as it stood when the peak was last raised.
    const std::vector<Allocation> &peak_stack() const noexcept { return peak_stack_; }

    /// False once any scope was closed out of order.
    bool well_nested() const noexcept { return well_nested_; }

    /// Forgets the peak (the open scopes stay charged).
    void reset_peak();

private:
    void release(std::size_t depth) noexcept;

    std::vector<Allocation> stack_;
    std::vector<Allocation> peak_stack_;
    std::uint64_t current_ = 0;
    std::uint64_t peak_ = 0;
    bool well_nested_ = true;
};

} // namespace catmv
