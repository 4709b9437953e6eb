#include "catmv/tree_eval.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace catmv {

void TreeOracle::apply(CatalyticState &state, const OracleRequest &request) {
    const auto &inst = *instance_;
    const auto child = path_.child(2, request.sigma ? 1 : 0);
    if (child.length > inst.h)
        throw InvariantViolation("tree oracle: path " + child.to_string(2) + " below the leaves");
    const auto side = request.ctrl ? FamilySide::V : FamilySide::U;
    const auto target = request.sigma ? Register::Y : Register::X;

    if (child.length == inst.h) {
        state.add_scaled(target, request.gamma, family_->stream(side, inst.leaves[child.index]));
        return;
    }

    auto stash = state.ledger().open("tree.stash", state.basis().element_bits() + 2);
    state.swap_registers(target, Register::Z);
    const auto parent = path_;
    path_ = child;
    one_level_update(TruthTableView{inst.table(child), inst.ell}, request.gamma,
                     request.ctrl ? WFamily::V : WFamily::U, state, *this, *family_, {}, options_);
    path_ = parent;
    state.swap_registers(target, Register::Z);
}

EvalResult eval_catalytic(const TreeEvalInstance &instance, const MvFamily &family,
                          CatalyticState &state, const EvalOptions &options) {
    instance.validate();
    if (instance.fanin != 2) throw InputError("eval_catalytic: instance must have fanin 2");
    if (family.size() < (std::uint64_t{1} << instance.ell))
        throw InputError("eval_catalytic: family has fewer than 2^ell members");
    if (family.dim() != state.dim())
        throw InputError("eval_catalytic: family dimension " + std::to_string(family.dim()) +
                         " != register dimension " + std::to_string(state.dim()));
    if (!(family.basis() == state.basis()))
        throw InputError("eval_catalytic: family and registers use different moduli");

    const auto m = state.modulus();
    const auto d = state.dim();
    auto &ledger = state.ledger();
    ledger.reset_peak();
    const auto calls_before = state.oracle_calls();
    const auto layout = value_layout(d, m, instance.ell);

    auto path_scope = ledger.open("tree.path", instance.h + bits_for(instance.h + 1));
    auto reg_scope = ledger.open("tree.value_reg", layout.coords * std::uint64_t{
                                                       state.basis().element_bits()});
    auto slot = state.reg_mut(Register::Z).subspan(layout.first_coord, layout.coords);
    std::vector<Coord> reg(slot.begin(), slot.end());
    const bool free_backed = options.value_slot == ValueSlotMode::FreeSpaceBacked;
    if (free_backed)
        for (auto &c : slot) c = 0;

    const TruthTableView root{instance.table({0, 0}), instance.ell};
    TreeOracle oracle(instance, family, options.one_level);
    one_level_update(root, 1, WFamily::Value, state, oracle, family, layout, options.one_level);

    std::vector<Coord> chunks(layout.coords);
    {
        auto now = state.reg(Register::Z).subspan(layout.first_coord, layout.coords);
        for (std::size_t i = 0; i < chunks.size(); ++i)
            chunks[i] = static_cast<Coord>(free_backed ? now[i] : sub_mod(now[i], reg[i], m));
    }
    EvalResult result;
    result.value = unpack_value(chunks, layout);

    one_level_update(root, m - 1, WFamily::Value, state, oracle, family, layout,
                     options.one_level);
    if (free_backed) {
        // adding back rather than overwriting keeps a dirty slot visible below
        auto now = state.reg_mut(Register::Z).subspan(layout.first_coord, layout.coords);
        for (std::size_t i = 0; i < now.size(); ++i)
            now[i] = static_cast<Coord>(add_mod(now[i], reg[i], m));
    }
    reg_scope.close();
    path_scope.close();

    result.restore = state.assert_restored_all();
    result.oracle_calls = state.oracle_calls() - calls_before;
    result.peak_free_bits = ledger.peak_bits();
    if (options.strict && !result.restore)
        throw RestorationError("eval_catalytic: " + result.restore.describe());
    return result;
}

std::uint64_t analytic_oracle_calls(unsigned h, std::size_t t) {
    const auto q = one_level_oracle_calls(t);
    std::uint64_t total = 0, power = 1;
    for (unsigned k = 1; k <= h; ++k) {
        power *= q;
        total += power;
    }
    return 2 * total;
}

std::string StatsRecord::to_line() const {
    for (char c : id)
        if (c == ' ' || c == '=' || c == '\n' || c == '\t')
            throw InputError("stats: id must not contain spaces or '='");
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", wall_time_ms);
    char hex[20];
    auto [end, ec] = std::to_chars(hex, hex + sizeof hex, value, 16);
    std::ostringstream out;
    out << "id=" << (id.empty() ? "-" : id) << " h=" << h << " ell=" << ell << " t=" << t
        << " m=" << m << " d=" << d << " oracle_calls=" << oracle_calls
        << " peak_free_bits=" << peak_free_bits << " catalytic_bits=" << catalytic_bits
        << " wall_time_ms=" << ms << " restored=" << (restored ? "true" : "false")
        << " value_hex=" << std::string_view(hex, end - hex);
    return out.str();
}

StatsRecord StatsRecord::parse(const std::string &line) {
    static constexpr const char *keys[] = {"id",           "h",              "ell",
                                           "t",            "m",              "d",
                                           "oracle_calls", "peak_free_bits", "catalytic_bits",
                                           "wall_time_ms", "restored",       "value_hex"};
    std::istringstream in(line);
    StatsRecord rec;
    std::string tok;
    for (const char *key : keys) {
        if (!(in >> tok)) throw InputError(std::string("stats: missing field ") + key);
        const auto eq = tok.find('=');
        if (eq == std::string::npos || tok.substr(0, eq) != key)
            throw InputError(std::string("stats: expected ") + key + "=..., got '" + tok + "'");
        const std::string val = tok.substr(eq + 1);
        auto num = [&](int base = 10) {
            std::uint64_t v = 0;
            auto [p, e] = std::from_chars(val.data(), val.data() + val.size(), v, base);
            if (e != std::errc() || p != val.data() + val.size() || val.empty())
                throw InputError(std::string("stats: bad value for ") + key);
            return v;
        };
        const std::string_view k(key);
        if (k == "id") rec.id = val;
        else if (k == "h") rec.h = static_cast<unsigned>(num());
        else if (k == "ell") rec.ell = static_cast<unsigned>(num());
        else if (k == "t") rec.t = num();
        else if (k == "m") rec.m = num();
        else if (k == "d") rec.d = num();
        else if (k == "oracle_calls") rec.oracle_calls = num();
        else if (k == "peak_free_bits") rec.peak_free_bits = num();
        else if (k == "catalytic_bits") rec.catalytic_bits = num();
        else if (k == "wall_time_ms") {
            try {
                rec.wall_time_ms = std::stod(val);
            } catch (const std::exception &) {
                throw InputError("stats: bad value for wall_time_ms");
            }
        } else if (k == "restored") {
            if (val != "true" && val != "false") throw InputError("stats: restored must be true/false");
            rec.restored = val == "true";
        } else rec.value = num(16);
    }
    if (in >> tok) throw InputError("stats: unexpected trailing field '" + tok + "'");
    return rec;
}

} // namespace catmv
