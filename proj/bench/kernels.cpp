#include <benchmark/benchmark.h>

#include <vector>

#include "locsom/bmu.hpp"
#include "locsom/datasets.hpp"
#include "locsom/lattice.hpp"
#include "locsom/metrics.hpp"
#include "locsom/random.hpp"
#include "locsom/som.hpp"

namespace {

using namespace locsom;

struct BmuFixture {
    MapState state;
    std::vector<std::vector<double>> samples;

    BmuFixture(std::size_t units, std::size_t dim) : state(units, dim) {
        Rng rng(units * 31 + dim);
        for (std::size_t j = 0; j < units; ++j) {
            for (std::size_t a = 0; a < dim; ++a) state.set_coord(a, static_cast<UnitId>(j), rng.uniform());
        }
        for (int i = 0; i < 256; ++i) {
            std::vector<double> s(dim);
            for (auto& v : s) v = rng.uniform();
            samples.push_back(std::move(s));
        }
    }
};

template <BmuPair (*Fn)(const MapState&, std::span<const double>)>
void bm_bmu(benchmark::State& st) {
    BmuFixture f(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    std::size_t i = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(Fn(f.state, f.samples[i++ & 255]));
    }
    st.SetItemsProcessed(st.iterations());
}

void bmu_args(benchmark::internal::Benchmark* b) {
    for (int n : {100, 400, 900, 1600}) {
        for (int d : {2, 3}) b->Args({n, d});
    }
}

BENCHMARK(bm_bmu<find_bmu>)->Name("find_bmu/simd")->Apply(bmu_args);
BENCHMARK(bm_bmu<find_bmu_reference>)->Name("find_bmu/reference")->Apply(bmu_args);

template <std::size_t (*Fn)(const MapState&, const LatticeGraph&)>
void bm_crossings(benchmark::State& st) {
    const auto side = static_cast<std::size_t>(st.range(0));
    const LatticeGraph graph = LatticeGraph::square(side);
    const MapState state = init_weights(InitMode::Random, graph.size(), Box{{0.0, 0.0}, {1.0, 1.0}}, 7);
    for (auto _ : st) benchmark::DoNotOptimize(Fn(state, graph));
}

BENCHMARK(bm_crossings<count_edge_crossings>)->Name("edge_crossings/parallel")->Arg(10)->Arg(20)->Arg(30)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_crossings<count_edge_crossings_reference>)->Name("edge_crossings/reference")->Arg(10)->Arg(20)->Arg(30)
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
