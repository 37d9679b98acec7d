#include <benchmark/benchmark.h>

#include "wmsb/tree.hpp"

using namespace wmsb;

namespace {

Row parent_row(const TreeSpec& spec, std::size_t depth) {
    RowGenerator gen(spec, depth);
    while (gen.advance()) {
    }
    return gen.current();
}

const TreeSpec& unit_tree() {
    static const TreeSpec spec(Fraction(0, 1), Fraction(1, 1));
    return spec;
}

const TreeSpec& unreduced_tree() {
    static const TreeSpec spec(Fraction(1, 3), Fraction(3, 1), ReductionScheme::none());
    return spec;
}

template <Row (*Kernel)(const Row&, const TreeSpec&)>
void run(benchmark::State& state, const TreeSpec& spec) {
    const Row parent = parent_row(spec, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Row child = Kernel(parent, spec);
        benchmark::DoNotOptimize(child.entries.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(parent.entries.size() - 1));
}

void BM_reference_uniform(benchmark::State& s) { run<reference::next_row>(s, unit_tree()); }
void BM_parallel_uniform(benchmark::State& s) { run<next_row>(s, unit_tree()); }
void BM_reference_none(benchmark::State& s) { run<reference::next_row>(s, unreduced_tree()); }
void BM_parallel_none(benchmark::State& s) { run<next_row>(s, unreduced_tree()); }

}  // namespace

// argument: depth of the parent row
BENCHMARK(BM_reference_uniform)->DenseRange(6, 11, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_uniform)->DenseRange(6, 11, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reference_none)->DenseRange(6, 11, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_none)->DenseRange(6, 11, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
