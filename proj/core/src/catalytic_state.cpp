#include "catmv/catalytic_state.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace catmv {

const char *register_name(Register r) noexcept {
    switch (r) {
    case Register::X: return "x";
    case Register::Y: return "y";
    case Register::Z: return "z";
    }
    return "?";
}

std::string RestoreReport::describe() const {
    if (restored) return "restored";
    std::ostringstream os;
    os << "register " << register_name(*reg) << " differs at coordinate " << coordinate
       << ": expected " << expected << ", found " << actual;
    return os.str();
}

CatalyticState::CatalyticState(PrimeBasis basis, std::size_t dim)
    : CatalyticState(std::move(basis), std::vector<Coord>(dim), std::vector<Coord>(dim),
                     std::vector<Coord>(dim)) {}

CatalyticState::CatalyticState(PrimeBasis basis, std::vector<Coord> x, std::vector<Coord> y,
                               std::vector<Coord> z)
    : basis_(std::move(basis)), regs_{std::move(x), std::move(y), std::move(z)} {
    validate();
    snapshot_ = regs_;
}

void CatalyticState::validate() const {
    const auto d = regs_[0].size();
    if (d == 0) throw InputError("catalytic registers need dimension >= 1");
    for (const auto &r : regs_) {
        if (r.size() != d) throw InputError("catalytic registers differ in length");
        for (const auto c : r)
            if (c >= modulus())
                throw InputError("register entry " + std::to_string(c) + " not below m = " +
                                 std::to_string(modulus()));
    }
}

void CatalyticState::swap_registers(Register a, Register b) {
    if (a == b) throw InputError("swap_registers: registers must differ");
    auto scratch = ledger_.open("swap.pointer", bits_for(dim()) + basis_.element_bits());
    regs_[idx(a)].swap(regs_[idx(b)]);
}

RestoreReport CatalyticState::assert_restored(std::span<const Register> which) const {
    for (const auto r : which) {
        const auto &cur = regs_[idx(r)];
        const auto &snap = snapshot_[idx(r)];
        for (std::size_t k = 0; k < cur.size(); ++k)
            if (cur[k] != snap[k]) return {false, r, k, snap[k], cur[k]};
    }
    return {};
}

RestoreReport CatalyticState::assert_restored_all() const {
    static constexpr Register all[] = {Register::X, Register::Y, Register::Z};
    return assert_restored(all);
}

void CatalyticState::retake_snapshot() { snapshot_ = regs_; }

void CatalyticState::write_snapshot(std::ostream &out) const {
    out << "catalytic v1 d=" << dim() << " primes=";
    for (std::size_t i = 0; i < basis_.size(); ++i) out << (i ? "," : "") << basis_.prime(i);
    out << '\n';
    for (const auto &r : regs_) {
        for (std::size_t k = 0; k < r.size(); ++k) out << (k ? " " : "") << r[k];
        out << '\n';
    }
}

CatalyticState CatalyticState::read_snapshot(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    std::istringstream head(line);
    std::string magic, dim_field, primes_field;
    std::string version;
    head >> magic >> version >> dim_field >> primes_field;
    if (magic != "catalytic" || version != "v1" || dim_field.rfind("d=", 0) != 0 ||
        primes_field.rfind("primes=", 0) != 0)
        throw ParseError(1, "expected 'catalytic v1 d=<int> primes=<p,...>'");
    std::size_t d = 0;
    std::vector<std::uint64_t> primes;
    try {
        d = std::stoul(dim_field.substr(2));
        std::istringstream ps(primes_field.substr(7));
        for (std::string tok; std::getline(ps, tok, ',');) primes.push_back(std::stoull(tok));
    } catch (const std::exception &) {
        throw ParseError(1, "bad number in header");
    }
    PrimeBasis basis(std::move(primes));
    std::array<std::vector<Coord>, 3> regs;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!std::getline(in, line)) throw ParseError(i + 2, "missing register line");
        std::istringstream ls(line);
        std::uint64_t v;
        while (ls >> v) {
            if (v >= basis.modulus()) throw ParseError(i + 2, "entry not reduced mod m");
            regs[i].push_back(static_cast<Coord>(v));
        }
        if (!ls.eof()) throw ParseError(i + 2, "non-numeric entry");
        if (regs[i].size() != d)
            throw ParseError(i + 2, "expected " + std::to_string(d) + " coordinates");
    }
    return CatalyticState(std::move(basis), std::move(regs[0]), std::move(regs[1]),
                          std::move(regs[2]));
}

} // namespace catmv
