#include "catmv/instance.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "catmv/errors.hpp"
#include "catmv/rng.hpp"

namespace catmv {

std::string NodePath::to_string(unsigned fanin) const {
    if (length == 0) return "-";
    std::string s(length, '0');
    std::uint64_t v = index;
    for (unsigned i = length; i-- > 0;) {
        s[i] = static_cast<char>('0' + v % fanin);
        v /= fanin;
    }
    return s;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > (std::uint64_t{1} << 40) / base) throw InputError("instance too large");
        r *= base;
    }
    return r;
}

void check_shape(unsigned h, unsigned ell, unsigned fanin) {
    if (h == 0) throw InputError("instance: h must be at least 1");
    if (ell == 0 || ell > 32) throw InputError("instance: ell must be in [1, 32]");
    if (fanin < 2 || fanin > TreeEvalInstance::max_fanin)
        throw InputError("instance: fanin must be in [2, " +
                         std::to_string(TreeEvalInstance::max_fanin) + "]");
    if (std::uint64_t{fanin} * ell > TreeEvalInstance::max_table_bits)
        throw InputError("instance: r * ell = " + std::to_string(fanin * ell) + " exceeds " +
                         std::to_string(TreeEvalInstance::max_table_bits));
    const auto leaves = checked_pow(fanin, h);
    // total table entries ~ r^h / (r - 1) * 2^{r ell}
    if (leaves > (std::uint64_t{1} << 28) ||
        (leaves << (fanin * ell)) > (std::uint64_t{1} << 30))
        throw InputError("instance: too large to materialize");
}

} // namespace

std::uint64_t TreeEvalInstance::nodes_at(unsigned depth) const { return checked_pow(fanin, depth); }

std::span<const std::uint32_t> TreeEvalInstance::table(NodePath node) const {
    if (node.length >= h || node.index >= nodes_at(node.length))
        throw InputError("table: no internal node at " + node.to_string(fanin));
    const auto size = table_size();
    return std::span<const std::uint32_t>(tables[node.length]).subspan(node.index * size, size);
}

std::span<std::uint32_t> TreeEvalInstance::table_mut(NodePath node) {
    if (node.length >= h || node.index >= nodes_at(node.length))
        throw InputError("table: no internal node at " + node.to_string(fanin));
    const auto size = table_size();
    return std::span<std::uint32_t>(tables[node.length]).subspan(node.index * size, size);
}

std::uint64_t TreeEvalInstance::input_bits() const {
    return nodes_at(h) * ell * table_size();
}

TreeEvalInstance TreeEvalInstance::zeros(unsigned h, unsigned ell, unsigned fanin) {
    check_shape(h, ell, fanin);
    TreeEvalInstance inst;
    inst.h = h;
    inst.ell = ell;
    inst.fanin = fanin;
    inst.leaves.assign(inst.nodes_at(h), 0);
    inst.tables.resize(h);
    for (unsigned k = 0; k < h; ++k) inst.tables[k].assign(inst.nodes_at(k) * inst.table_size(), 0);
    return inst;
}

void TreeEvalInstance::validate() const {
    check_shape(h, ell, fanin);
    const std::uint64_t limit = std::uint64_t{1} << ell;
    if (leaves.size() != nodes_at(h))
        throw InputError("instance: expected " + std::to_string(nodes_at(h)) + " leaves, got " +
                         std::to_string(leaves.size()));
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i] >= limit)
            throw InputError("instance: leaf " + NodePath{h, i}.to_string(fanin) +
                             " exceeds ell bits");
    if (tables.size() != h) throw InputError("instance: expected one table level per depth");
    for (unsigned k = 0; k < h; ++k) {
        if (tables[k].size() != nodes_at(k) * table_size())
            throw InputError("instance: wrong table storage at depth " + std::to_string(k));
        for (auto v : tables[k])
            if (v >= limit)
                throw InputError("instance: table entry at depth " + std::to_string(k) +
                                 " exceeds ell bits");
    }
}

TreeEvalInstance gen_random_instance(unsigned h, unsigned ell, unsigned fanin, std::uint64_t seed) {
    auto inst = TreeEvalInstance::zeros(h, ell, fanin);
    SeededRng rng(seed);
    const std::uint64_t limit = std::uint64_t{1} << ell;
    for (auto &v : inst.leaves) v = static_cast<std::uint32_t>(rng.below(limit));
    for (auto &level : inst.tables)
        for (auto &v : level) v = static_cast<std::uint32_t>(rng.below(limit));
    return inst;
}

std::uint64_t eval_bruteforce(const TreeEvalInstance &instance) {
    instance.validate();
    const unsigned r = instance.fanin, ell = instance.ell;
    std::vector<std::uint32_t> values = instance.leaves;
    for (unsigned depth = instance.h; depth-- > 0;) {
        const auto count = instance.nodes_at(depth);
        std::vector<std::uint32_t> next(count);
        for (std::uint64_t u = 0; u < count; ++u) {
            std::uint64_t key = 0;
            for (unsigned c = 0; c < r; ++c) key = (key << ell) | values[u * r + c];
            next[u] = instance.table({depth, u})[key];
        }
        values = std::move(next);
    }
    return values[0];
}

namespace {

void write_hex(std::ostream &out, std::uint64_t v) {
    char buf[20];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, 16);
    out.write(buf, end - buf);
}

} // namespace

void write_instance(std::ostream &out, const TreeEvalInstance &instance) {
    instance.validate();
    const unsigned r = instance.fanin;
    out << "treeeval v1 h=" << instance.h << " ell=" << instance.ell << " r=" << r << '\n';
    for (std::uint64_t i = 0; i < instance.leaves.size(); ++i) {
        out << "leaf " << NodePath{instance.h, i}.to_string(r) << ' ';
        write_hex(out, instance.leaves[i]);
        out << '\n';
    }
    for (unsigned depth = 0; depth < instance.h; ++depth) {
        for (std::uint64_t u = 0; u < instance.nodes_at(depth); ++u) {
            out << "node " << NodePath{depth, u}.to_string(r);
            for (auto v : instance.table({depth, u})) {
                out << ' ';
                write_hex(out, v);
            }
            out << '\n';
        }
    }
}

std::string serialize_instance(const TreeEvalInstance &instance) {
    std::ostringstream out;
    write_instance(out, instance);
    return out.str();
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream &in) : in_(in) {}

    /// Next line split on single spaces; throws at end of input.
    std::vector<std::string_view> next(const char *expecting) {
        if (!std::getline(in_, line_))
            throw ParseError(number_ + 1, std::string("unexpected end of input, expected ") +
                                              expecting);
        ++number_;
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
        std::vector<std::string_view> fields;
        std::string_view rest(line_);
        while (!rest.empty()) {
            const auto sp = rest.find(' ');
            const auto field = rest.substr(0, sp);
            if (field.empty()) fail("empty field (double space)");
            fields.push_back(field);
            if (sp == std::string_view::npos) break;
            rest.remove_prefix(sp + 1);
            if (rest.empty()) fail("trailing space");
        }
        return fields;
    }

    bool at_end() {
        std::string extra;
        while (std::getline(in_, extra)) {
            ++number_;
            if (!extra.empty() && extra != "\r") return false;
        }
        return true;
    }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(number_, what); }
    std::size_t number() const noexcept { return number_; }

private:
    std::istream &in_;
    std::string line_;
    std::size_t number_ = 0;
};

std::uint64_t parse_uint(const LineReader &rd, std::string_view s, int base, const char *what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        rd.fail(std::string("bad ") + what + " '" + std::string(s) + "'");
    // canonical text only: no leading zeros, lowercase hex
    if (s.size() > 1 && s[0] == '0') rd.fail(std::string(what) + " has leading zeros");
    for (char c : s)
        if (c >= 'A' && c <= 'F') rd.fail(std::string(what) + " must be lowercase hex");
    return v;
}

std::uint64_t header_field(const LineReader &rd, std::string_view field, std::string_view key) {
    if (field.size() <= key.size() + 1 || field.substr(0, key.size()) != key ||
        field[key.size()] != '=')
        rd.fail("expected " + std::string(key) + "=<int> in header");
    return parse_uint(rd, field.substr(key.size() + 1), 10, key.data());
}

} // namespace

TreeEvalInstance parse_instance(std::istream &in) {
    LineReader rd(in);
    const auto head = rd.next("header");
    if (head.size() != 5 || head[0] != "treeeval" || head[1] != "v1")
        rd.fail("expected header 'treeeval v1 h=<int> ell=<int> r=<int>'");
    const auto h = header_field(rd, head[2], "h");
    const auto ell = header_field(rd, head[3], "ell");
    const auto r = header_field(rd, head[4], "r");
    if (h > 64 || ell > 64 || r > 64) rd.fail("header value out of range");
    TreeEvalInstance inst;
    try {
        inst = TreeEvalInstance::zeros(static_cast<unsigned>(h), static_cast<unsigned>(ell),
                                       static_cast<unsigned>(r));
    } catch (const InputError &e) {
        rd.fail(e.what());
    }
    const std::uint64_t limit = std::uint64_t{1} << ell;

    auto read_value = [&](std::string_view s) {
        const auto v = parse_uint(rd, s, 16, "value");
        if (v >= limit) rd.fail("value " + std::string(s) + " exceeds ell bits");
        return static_cast<std::uint32_t>(v);
    };

    for (std::uint64_t i = 0; i < inst.leaves.size(); ++i) {
        const auto f = rd.next("leaf line");
        const auto path = NodePath{inst.h, i}.to_string(inst.fanin);
        if (f.size() != 3 || f[0] != "leaf") rd.fail("expected 'leaf " + path + " <hex>'");
        if (f[1] != path) rd.fail("expected leaf " + path + ", got " + std::string(f[1]));
        inst.leaves[i] = read_value(f[2]);
    }
    for (unsigned depth = 0; depth < inst.h; ++depth) {
        for (std::uint64_t u = 0; u < inst.nodes_at(depth); ++u) {
            const auto f = rd.next("node line");
            const NodePath node{depth, u};
            const auto path = node.to_string(inst.fanin);
            if (f.empty() || f[0] != "node") rd.fail("expected 'node " + path + " ...'");
            if (f.size() < 2 || f[1] != path)
                rd.fail("expected node " + path + (f.size() < 2 ? "" : ", got " + std::string(f[1])));
            if (f.size() != 2 + inst.table_size())
                rd.fail("node " + path + " needs " + std::to_string(inst.table_size()) +
                        " entries, got " + std::to_string(f.size() - 2));
            auto table = inst.table_mut(node);
            for (std::size_t k = 0; k < table.size(); ++k) table[k] = read_value(f[2 + k]);
        }
    }
    if (!rd.at_end()) rd.fail("unexpected content after the last node");
    return inst;
}

TreeEvalInstance parse_instance(const std::string &text) {
    std::istringstream in(text);
    return parse_instance(in);
}

} // namespace catmv
