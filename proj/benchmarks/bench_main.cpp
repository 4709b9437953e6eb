#include <benchmark/benchmark.h>

#include "catmv/mv_family.hpp"
#include "catmv/one_level.hpp"
#include "catmv/tapes.hpp"
#include "catmv/tree_eval.hpp"

using namespace catmv;

namespace {

PrimeBasis basis_for(std::int64_t t) {
    return t == 1 ? PrimeBasis({3}) : PrimeBasis({3, 5});
}

void BM_FamilyBuild(benchmark::State &state) {
    const auto basis = basis_for(state.range(0));
    const auto ell = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        MvFamily fam(select_params(ell, basis));
        benchmark::DoNotOptimize(fam.dim());
    }
}
BENCHMARK(BM_FamilyBuild)->Args({1, 2})->Args({2, 2})->Args({2, 4})->Args({2, 6});

void BM_OneLevel(benchmark::State &state) {
    const auto basis = basis_for(state.range(0));
    const bool precomputed = state.range(1) != 0;
    const MvFamily fam(select_params(2, basis));
    std::vector<std::uint32_t> table(16);
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<std::uint32_t>(i % 4);
    auto st = make_state(basis, fam.dim(), TapeMode::Seeded, 1);
    FamilyOracle oracle(fam, 1, 2);
    OneLevelOptions opts;
    opts.precomputed_tables = precomputed;
    std::uint64_t gamma = 1;
    for (auto _ : state) {
        one_level_update(TruthTableView{table, 2}, gamma, WFamily::U, st, oracle, fam, {}, opts);
        gamma = basis.modulus() - gamma; // every second run undoes the previous one
    }
    state.counters["oracle_calls"] =
        benchmark::Counter(static_cast<double>(st.oracle_calls()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_OneLevel)->Args({1, 0})->Args({2, 0})->Args({2, 1});

void BM_TreeEval(benchmark::State &state) {
    const auto basis = basis_for(state.range(0));
    const auto h = static_cast<unsigned>(state.range(1));
    const MvFamily fam(select_params(2, basis));
    const auto in = gen_random_instance(h, 2, 2, 5);
    for (auto _ : state) {
        auto st = make_state(basis, fam.dim(), TapeMode::Seeded, 9);
        benchmark::DoNotOptimize(eval_catalytic(in, fam, st).value);
    }
}
BENCHMARK(BM_TreeEval)
    ->Args({1, 2})
    ->Args({1, 3})
    ->Args({2, 1})
    ->Args({2, 2})
    ->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State &state) {
    const auto in = gen_random_instance(static_cast<unsigned>(state.range(0)), 2, 2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(eval_bruteforce(in));
}
BENCHMARK(BM_BruteForce)->Arg(3)->Arg(8);

} // namespace

BENCHMARK_MAIN();
