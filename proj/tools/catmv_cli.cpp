// catmv: generate TreeEval instances, evaluate them catalytically or by brute
// force, and check matching-vector families, CIR schemes and the PIR demo.
//
// Exit codes: 0 ok, 2 verification failure, 3 restoration failure, 4 bad input.
// CATMV_SEED sets the default seed of every command.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catmv/bit_tape.hpp"
#include "catmv/cir.hpp"
#include "catmv/instance.hpp"
#include "catmv/mv_family.hpp"
#include "catmv/pir.hpp"
#include "catmv/tapes.hpp"
#include "catmv/tree_eval.hpp"

using namespace catmv;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify = 2;
constexpr int exit_restore = 3;
constexpr int exit_input = 4;

std::uint64_t default_seed() {
    const char *env = std::getenv("CATMV_SEED");
    if (env == nullptr || *env == '\0') return 1;
    char *end = nullptr;
    const auto v = std::strtoull(env, &end, 0);
    if (*end != '\0') throw InputError("CATMV_SEED is not an integer: " + std::string(env));
    return v;
}

std::vector<std::uint64_t> parse_primes(const std::string &text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw InputError("bad prime list '" + text + "'");
        }
    }
    if (out.empty()) throw InputError("empty prime list");
    return out;
}

PrimeBasis basis_from(const std::string &primes, unsigned t) {
    if (!primes.empty()) return PrimeBasis(parse_primes(primes));
    static const std::uint64_t first_odd[] = {3, 5, 7, 11, 13, 17};
    if (t == 0 || t > std::size(first_odd)) throw InputError("--t must be in [1, 6]");
    return PrimeBasis(std::vector<std::uint64_t>(first_odd, first_odd + t));
}

std::string hex(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

struct GenOpts {
    unsigned h = 2, ell = 2, fanin = 2;
    std::uint64_t seed = 1;
    std::string out = "-";
};

int cmd_gen(const GenOpts &o) {
    const auto inst = gen_random_instance(o.h, o.ell, o.fanin, o.seed);
    const auto text = serialize_instance(inst);
    const auto accounting = "n = r^h * ell * 2^(r*ell) = " + std::to_string(inst.input_bits()) +
                            " bits";
    if (o.out == "-") {
        std::cout << text;
        std::cerr << accounting << '\n';
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw InputError("cannot write " + o.out);
        f << text;
        if (!f.flush()) throw InputError("write to " + o.out + " failed");
        std::cout << o.out << ' ' << accounting << '\n';
    }
    return exit_ok;
}

struct SolveOpts {
    std::string instance;
    unsigned h = 2, ell = 2, fanin = 2;
    std::uint64_t seed = 1;
    std::string mode = "catalytic";
    std::string primes;
    unsigned t = 2;
    std::string tape = "seeded";
    std::string tape_file;
    std::uint64_t tape_seed = 1;
    bool bit_tape = false;
    std::string value_slot = "copy";
    bool precompute = false;
    bool verify = true;
    std::string stats;
    std::string id;
};

int cmd_solve(const SolveOpts &o) {
    TreeEvalInstance inst;
    std::string id = o.id;
    if (!o.instance.empty()) {
        std::ifstream f(o.instance);
        if (!f) throw InputError("cannot open " + o.instance);
        inst = parse_instance(f);
        if (id.empty()) id = o.instance.substr(o.instance.find_last_of('/') + 1);
    } else {
        inst = gen_random_instance(o.h, o.ell, o.fanin, o.seed);
        if (id.empty()) id = "gen-" + std::to_string(o.seed);
    }
    const auto expected = eval_bruteforce(inst);
    if (o.mode == "brute") {
        std::cout << "value=" << hex(expected) << '\n';
        return exit_ok;
    }
    if (o.mode != "catalytic") throw InputError("--mode must be brute or catalytic");

    const auto binary = inst.fanin == 2 ? inst : reduce_fanin(inst);
    const auto basis = basis_from(o.primes, o.t);
    const MvFamily family(select_params(binary.ell, basis));
    const auto layout = register_tape_layout(basis.modulus(), family.dim());

    EvalOptions options;
    options.strict = false;
    options.one_level.precomputed_tables = o.precompute;
    if (o.value_slot == "free") options.value_slot = ValueSlotMode::FreeSpaceBacked;
    else if (o.value_slot != "copy") throw InputError("--value-slot must be copy or free");

    std::optional<BitTape> raw;
    std::optional<TapeEncoding> encoding;
    std::optional<CatalyticState> state;
    if (o.tape == "file") {
        if (o.tape_file.empty()) throw InputError("--tape file needs --tape-file");
        std::ifstream f(o.tape_file);
        if (!f) throw InputError("cannot open " + o.tape_file);
        state.emplace(CatalyticState::read_snapshot(f));
        if (!(state->basis() == basis) || state->dim() != family.dim())
            throw InputError("snapshot does not match the family (d=" +
                             std::to_string(family.dim()) + ")");
    } else if (o.bit_tape) {
        raw = make_bit_tape(layout.total_bits(), parse_tape_mode(o.tape), o.tape_seed);
        encoding = encode_tape(*raw, layout);
        state.emplace(state_from_encoding(*encoding, basis));
    } else {
        state.emplace(make_state(basis, family.dim(), parse_tape_mode(o.tape), o.tape_seed));
    }

    const auto start = std::chrono::steady_clock::now();
    const auto result = eval_catalytic(binary, family, *state, options);
    const auto elapsed = std::chrono::steady_clock::now() - start;

    bool restored = result.restore.restored;
    if (raw) {
        store_registers(*state, *encoding);
        restored = restored && decode_tape(*encoding, layout) == *raw;
    }

    StatsRecord rec;
    rec.id = id;
    rec.h = binary.h;
    rec.ell = binary.ell;
    rec.t = basis.size();
    rec.m = basis.modulus();
    rec.d = family.dim();
    rec.oracle_calls = result.oracle_calls;
    rec.peak_free_bits = result.peak_free_bits;
    rec.catalytic_bits = layout.total_bits();
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    rec.restored = restored;
    rec.value = result.value;
    const auto line = rec.to_line();
    std::cout << line << '\n';
    if (!o.stats.empty()) {
        std::ofstream f(o.stats, std::ios::app);
        if (!f) throw InputError("cannot append to " + o.stats);
        f << line << '\n';
    }

    if (!restored) {
        std::cerr << "restoration failed: " << result.restore.describe() << '\n';
        return exit_restore;
    }
    if (o.verify && result.value != expected) {
        std::cerr << "value mismatch: catalytic " << hex(result.value) << ", brute force "
                  << hex(expected) << '\n';
        return exit_verify;
    }
    return exit_ok;
}

struct MvCheckOpts {
    unsigned ell = 2;
    std::string primes = "3,5";
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    std::string dump;
};

int cmd_mvcheck(const MvCheckOpts &o) {
    const PrimeBasis basis(parse_primes(o.primes));
    const MvFamily family(select_params(o.ell, basis));
    std::cout << family.params().describe() << '\n';
    if (!o.dump.empty()) {
        std::ofstream f(o.dump);
        if (!f) throw InputError("cannot write " + o.dump);
        family.write(f, family.size());
    }
    VerifyMode mode = VerifyMode::Exhaustive;
    if (o.mode == "sampled") mode = VerifyMode::Sampled;
    else if (o.mode != "exhaustive") throw InputError("--mode must be exhaustive or sampled");
    const auto report = verify_family(family, mode, o.samples, o.seed);
    std::cout << report.describe() << '\n';
    return report ? exit_ok : exit_verify;
}

struct CirOpts {
    std::string scheme = "cm";
    unsigned ell = 2;
    std::string primes = "3,5";
    unsigned masks = 10;
    std::uint64_t seed = 1;
};

int cmd_cirtest(const CirOpts &o) {
    std::unique_ptr<MvFamily> family;
    std::unique_ptr<CirScheme> scheme;
    if (o.scheme == "cm") {
        auto cm = std::make_unique<CmCir>(o.ell);
        std::cout << "cm_cir ell=" << o.ell << " q=" << cm->field().q << " s=" << cm->field().s
                  << " omega=" << cm->field().omega << '\n';
        scheme = std::move(cm);
    } else if (o.scheme == "mv") {
        family = std::make_unique<MvFamily>(select_params(o.ell, PrimeBasis(parse_primes(o.primes))));
        std::cout << "mv_cir " << family->params().describe() << '\n';
        scheme = std::make_unique<MvCir>(*family, o.ell);
    } else {
        throw InputError("--scheme must be cm or mv");
    }
    const auto &ring = scheme->ring();
    const auto n = scheme->index_count();
    SeededRng rng(o.seed);
    std::vector<RingElement> db(n * n);
    for (auto &rec : db) rec = ring.random(rng);
    std::uint64_t checked = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
        for (std::uint64_t b = 0; b < n; ++b) {
            for (unsigned k = 0; k < o.masks; ++k) {
                // mask 0 is x = y = 0
                const auto x = k == 0 ? ring.zero() : ring.random(rng);
                const auto y = k == 0 ? ring.zero() : ring.random(rng);
                const auto got = cir_retrieve(*scheme, db, a, b, x, y);
                ++checked;
                if (got != db[a * n + b]) {
                    std::cout << "FAIL a=" << a << " b=" << b << " mask=" << k << '\n';
                    return exit_verify;
                }
            }
        }
    }
    std::cout << "pass: " << checked << " retrievals over " << scheme->servers()
              << " servers\n";
    return exit_ok;
}

struct PirOpts {
    std::string primes = "3";
    std::uint64_t q = 0;
    unsigned ell = 1;
    unsigned trials = 20;
    std::uint64_t seed = 1;
};

int cmd_pirdemo(const PirOpts &o) {
    const PrimeBasis basis(parse_primes(o.primes));
    const MvFamily family(select_params(o.ell, basis));
    const auto q = o.q != 0 ? o.q
                            : find_prime_with_roots(basis, basis.modulus() * 1000 + 1).prime;
    SeededRng rng(o.seed);
    std::vector<std::uint64_t> db(family.size());
    for (auto &v : db) v = rng.below(q);
    const PirScheme scheme(family, q, db);
    std::cout << "pir N=" << family.size() << " d=" << family.dim() << " q=" << q
              << " servers=" << scheme.servers() << '\n';

    bool correct = true;
    std::vector<Coord> r(family.dim());
    for (std::uint64_t i = 0; i < family.size() && correct; ++i) {
        for (unsigned trial = 0; trial < o.trials; ++trial) {
            for (auto &c : r) c = static_cast<Coord>(rng.below(basis.modulus()));
            std::vector<std::uint64_t> answers;
            for (const auto &query : pir_query(scheme, i, r))
                answers.push_back(pir_answer(scheme, query));
            if (pir_reconstruct(scheme, i, r, answers) != db[i]) {
                std::cout << "correctness FAIL at index " << i << '\n';
                correct = false;
                break;
            }
        }
    }
    if (correct) std::cout << "correctness pass\n";
    const auto privacy = pir_privacy_check(scheme, family.size());
    std::cout << "privacy " << (privacy ? "pass" : "FAIL: " + privacy.failure) << " ("
              << privacy.cases << " cases)\n";
    return correct && privacy ? exit_ok : exit_verify;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Catalytic tree evaluation with matching-vector families"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    try {
        seed = default_seed();
    } catch (const InputError &e) {
        std::cerr << e.what() << '\n';
        return exit_input;
    }

    GenOpts gen;
    gen.seed = seed;
    auto *g = app.add_subcommand("gen", "Write a random instance file");
    g->add_option("--h", gen.h, "Height")->capture_default_str();
    g->add_option("--ell", gen.ell, "Label width in bits")->capture_default_str();
    g->add_option("--fanin,-r", gen.fanin, "Fanin")->capture_default_str();
    g->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    g->add_option("--out,-o", gen.out, "Output path, - for stdout")->capture_default_str();

    SolveOpts solve;
    solve.seed = seed;
    solve.tape_seed = seed;
    auto *s = app.add_subcommand("solve", "Evaluate an instance");
    s->add_option("--instance,-i", solve.instance, "Instance file (else generate)");
    s->add_option("--h", solve.h, "Height when generating")->capture_default_str();
    s->add_option("--ell", solve.ell, "Label width when generating")->capture_default_str();
    s->add_option("--fanin,-r", solve.fanin, "Fanin when generating")->capture_default_str();
    s->add_option("--seed", solve.seed, "Generator seed")->capture_default_str();
    s->add_option("--mode", solve.mode, "brute or catalytic")->capture_default_str();
    s->add_option("--primes", solve.primes, "Comma-separated odd primes");
    s->add_option("--t", solve.t, "Use the first t odd primes")->capture_default_str();
    s->add_option("--tape", solve.tape, "seeded, zeros, max, alternating or file")
        ->capture_default_str();
    s->add_option("--tape-file", solve.tape_file, "Register snapshot for --tape file");
    s->add_option("--tape-seed", solve.tape_seed, "Seed for --tape seeded")->capture_default_str();
    s->add_flag("--bit-tape", solve.bit_tape, "Apply the tape mode to raw bits and encode");
    s->add_option("--value-slot", solve.value_slot, "copy or free")->capture_default_str();
    s->add_flag("--precompute", solve.precompute, "Precompute inner-product tables");
    s->add_flag("!--no-verify", solve.verify, "Skip the brute-force comparison");
    s->add_option("--stats", solve.stats, "Append the stats line to this file");
    s->add_option("--id", solve.id, "Instance id for the stats line");

    MvCheckOpts mv;
    mv.seed = seed;
    auto *m = app.add_subcommand("mvcheck", "Verify a matching-vector family");
    m->add_option("--ell", mv.ell, "Family must have 2^ell members")->capture_default_str();
    m->add_option("--primes", mv.primes, "Comma-separated odd primes")->capture_default_str();
    m->add_option("--mode", mv.mode, "exhaustive or sampled")->capture_default_str();
    m->add_option("--samples", mv.samples, "Pairs for sampled mode")->capture_default_str();
    m->add_option("--seed", mv.seed, "Sampling seed")->capture_default_str();
    m->add_option("--dump", mv.dump, "Write the family vectors to this file");

    CirOpts cir;
    cir.seed = seed;
    auto *c = app.add_subcommand("cirtest", "Check CIR correctness over all (a, b)");
    c->add_option("--scheme", cir.scheme, "cm or mv")->capture_default_str();
    c->add_option("--ell", cir.ell, "Index width")->capture_default_str();
    c->add_option("--primes", cir.primes, "Primes for --scheme mv")->capture_default_str();
    c->add_option("--masks", cir.masks, "Masks per (a, b), the first is zero")
        ->capture_default_str();
    c->add_option("--seed", cir.seed, "Seed")->capture_default_str();

    PirOpts pir;
    pir.seed = seed;
    auto *p = app.add_subcommand("pirdemo", "Run the 2^t-server PIR with privacy check");
    p->add_option("--primes", pir.primes, "Comma-separated odd primes")->capture_default_str();
    p->add_option("--q", pir.q, "Field prime with m | q - 1 (default: smallest)");
    p->add_option("--ell", pir.ell, "Family must have 2^ell members")->capture_default_str();
    p->add_option("--trials", pir.trials, "Random r per index")->capture_default_str();
    p->add_option("--seed", pir.seed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) return cmd_solve(solve);
        if (*m) return cmd_mvcheck(mv);
        if (*c) return cmd_cirtest(cir);
        if (*p) return cmd_pirdemo(pir);
    } catch (const RestorationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_restore;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const NotFoundError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_verify;
    }
    return exit_input;
}
