// Parallel verification kernels against their serial twins.

#include <benchmark/benchmark.h>

#include "hass/covvec.hpp"
#include "hass/poly.hpp"
#include "hass/setsys.hpp"

using namespace hass;

namespace {

void bench_contract(benchmark::State& state, Exec exec) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    auto p = poly::build_polynomial(n, poly::ModulusSpec::from_m(6));
    for (auto _ : state) {
        auto report = poly::verify_contract(p, exec);
        benchmark::DoNotOptimize(report.pass);
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}

void contract_serial(benchmark::State& state) { bench_contract(state, Exec::Serial); }
void contract_parallel(benchmark::State& state) { bench_contract(state, Exec::Parallel); }

void bench_lemma3(benchmark::State& state, Exec exec) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    auto ss = setsys::build_set_system(n, poly::ModulusSpec::from_m(6), false);
    for (auto _ : state) {
        auto report = setsys::verify_lemma3(ss, exec);
        benchmark::DoNotOptimize(report.diagonal_equal);
    }
    std::int64_t strings = 1;
    for (unsigned i = 0; i < n; ++i) strings *= n;
    state.SetItemsProcessed(state.iterations() * strings * strings);
}

void lemma3_serial(benchmark::State& state) { bench_lemma3(state, Exec::Serial); }
void lemma3_parallel(benchmark::State& state) { bench_lemma3(state, Exec::Parallel); }

void bench_pairs(benchmark::State& state, Exec exec) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    auto ss = setsys::build_set_system(n, poly::ModulusSpec::from_m(6), true);
    std::vector<covvec::CoveringVector> family;
    for (std::size_t i = 0; i < ss.sets.size(); ++i) family.push_back(covvec::from_set(ss, i));
    for (auto _ : state) {
        auto report = covvec::verify_covering_family(family, ss.modulus, std::nullopt, exec);
        benchmark::DoNotOptimize(report.pairwise_consistent);
    }
    const std::int64_t pairs = static_cast<std::int64_t>(family.size()) *
                               (static_cast<std::int64_t>(family.size()) - 1) / 2;
    state.SetItemsProcessed(state.iterations() * pairs);
}

void pairs_serial(benchmark::State& state) { bench_pairs(state, Exec::Serial); }
void pairs_parallel(benchmark::State& state) { bench_pairs(state, Exec::Parallel); }

} // namespace

BENCHMARK(contract_serial)->Arg(16)->Arg(18)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(contract_parallel)->Arg(16)->Arg(18)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(lemma3_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(lemma3_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(pairs_serial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(pairs_parallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
