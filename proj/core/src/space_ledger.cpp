#include "catmv/space_ledger.hpp"

#include <utility>

namespace catmv {

SpaceLedger::Scope::Scope(Scope &&other) noexcept
    : ledger_(std::exchange(other.ledger_, nullptr)), depth_(other.depth_) {}

SpaceLedger::Scope &SpaceLedger::Scope::operator=(Scope &&other) noexcept {
    if (this != &other) {
        close();
        ledger_ = std::exchange(other.ledger_, nullptr);
        depth_ = other.depth_;
    }
    return *this;
}

void SpaceLedger::Scope::close() noexcept {
    if (ledger_ != nullptr) std::exchange(ledger_, nullptr)->release(depth_);
}

SpaceLedger::Scope SpaceLedger::open(const char *label, std::uint64_t bits) {
    stack_.push_back({label, bits});
    current_ += bits;
    if (current_ > peak_) {
        peak_ = current_;
        peak_stack_ = stack_;
    }
    return Scope(this, stack_.size());
}

void SpaceLedger::release(std::size_t depth) noexcept {
    if (depth != stack_.size()) {
        well_nested_ = false;
        if (depth > stack_.size() || depth == 0) return;
    }
    current_ -= stack_[depth - 1].bits;
    stack_.erase(stack_.begin() + static_cast<std::ptrdiff_t>(depth - 1));
}

void SpaceLedger::reset_peak() {
    peak_ = current_;
    peak_stack_ = stack_;
}

} // namespace catmv
