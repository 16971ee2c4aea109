// Microbenchmarks for the hot paths: width tables, the recursive width
// evaluator, sampling, and exact enumeration.

#include <benchmark/benchmark.h>

#include "rci/dfa.hpp"
#include "rci/games.hpp"
#include "rci/generic_width.hpp"
#include "rci/harness.hpp"
#include "rci/improviser.hpp"
#include "rci/width_oracle.hpp"

namespace {

using namespace rci;

std::shared_ptr<const Dfa> counter_dfa(bool nonnegative_end) {
    AlphabetPtr alphabet = make_alphabet({"+", "=", "-"});
    std::vector<std::string> names = {"-3", "-2", "-1", "+0", "+1", "+2", "+3"};
    auto index = [](int c) { return static_cast<StateId>(c + 3); };
    std::vector<bool> accepting(7, false);
    for (int c = -2; c <= 2; ++c) accepting[index(c)] = nonnegative_end ? c >= 0 : true;
    std::vector<StateId> delta(7 * 3);
    for (int c = -3; c <= 3; ++c) {
        const bool sink = c == -3 || c == 3;
        delta[index(c) * 3 + 0] = sink ? index(c) : index(c + 1);
        delta[index(c) * 3 + 1] = index(c);
        delta[index(c) * 3 + 2] = sink ? index(c) : index(c - 1);
    }
    return std::make_shared<const Dfa>(alphabet, std::move(names), index(0), std::move(accepting),
                                       std::move(delta));
}

RciInstance counter_instance(int horizon) {
    RciInstance inst;
    inst.hard = counter_dfa(false);
    inst.soft = counter_dfa(true);
    inst.alphabet = inst.hard->alphabet_ptr();
    inst.horizon = horizon;
    inst.epsilon = Rational(1, 2);
    inst.rho = Rational(1, 2);
    return inst;
}

GridPatrolInstance patrol5() {
    GridPatrolInstance grid;
    grid.width = 5;
    grid.height = 5;
    grid.patroller = {0, 0};
    grid.adversary = {4, 4};
    grid.waypoints = {{1, 1}, {2, 2}};
    for (int x = 0; x <= 2; ++x) {
        for (int y = 0; y <= 2; ++y) grid.forbidden.push_back({x, y});
    }
    grid.horizon = 12;
    return grid;
}

void BM_WidthTable_Counter(benchmark::State& state) {
    auto dfa = counter_dfa(false);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WidthTable table(dfa, n);
        benchmark::DoNotOptimize(table.width_given(Word{}));
    }
}
BENCHMARK(BM_WidthTable_Counter)->Arg(4)->Arg(16)->Arg(64);

void BM_CompileGrid5(benchmark::State& state) {
    const GridPatrolInstance grid = patrol5();
    for (auto _ : state) {
        CompiledGame compiled = compile_grid(grid);
        benchmark::DoNotOptimize(compiled.hard->state_count());
    }
}
BENCHMARK(BM_CompileGrid5);

void BM_GenericWidth_Counter(benchmark::State& state) {
    auto dfa = counter_dfa(false);
    const int n = static_cast<int>(state.range(0));
    auto oracle = membership_oracle(dfa, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(generic_width(oracle, Word{}));
    }
}
BENCHMARK(BM_GenericWidth_Counter)->Arg(4)->Arg(8)->Arg(10);

void BM_ImprovisePlay_Counter(benchmark::State& state) {
    auto inst = counter_instance(static_cast<int>(state.range(0)));
    auto widths = make_width_oracles(inst);
    Improviser improviser(inst, widths);
    GreedyMinWidthAdversary adversary(widths.width_i, inst.alphabet->size());
    Mt19937Source source(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(improvise_play(improviser, adversary, source));
    }
}
BENCHMARK(BM_ImprovisePlay_Counter)->Arg(4)->Arg(16)->Arg(64);

void BM_ExactDistribution_Counter(benchmark::State& state) {
    auto inst = counter_instance(4);
    auto widths = make_width_oracles(inst);
    DriftAdversary drift(*inst.alphabet);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_distribution(inst, widths, drift));
    }
}
BENCHMARK(BM_ExactDistribution_Counter);

void BM_SampleWeighted(benchmark::State& state) {
    const std::vector<Rational> weights = {Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    Mt19937Source source(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_weighted(weights, source));
    }
}
BENCHMARK(BM_SampleWeighted);

} // namespace

BENCHMARK_MAIN();
