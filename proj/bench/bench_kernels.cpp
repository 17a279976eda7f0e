#include "affcurv/catalog.hpp"
#include "affcurv/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace affcurv;

namespace {

const CatalogEntry& dumbbell() {
    static const CatalogEntry e = catalog_entry("dumbbell");
    return e;
}

void critical_points(benchmark::State& state, Execution exec) {
    const CriticalPointFinder finder(dumbbell().atlas);
    const auto phis = sample_ellipsoid(UnitEllipsoid::standard(3), 1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(critical_point_sweep(finder, phis, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void support(benchmark::State& state, Execution exec) {
    const std::vector<Vec> pts = sample_points(dumbbell().atlas, static_cast<int>(state.range(0)));
    const std::vector<Vec> cov(pts.rbegin(), pts.rend());
    for (auto _ : state) benchmark::DoNotOptimize(support_sweep(pts, cov, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size() * pts.size()));
}

}  // namespace

BENCHMARK_CAPTURE(critical_points, serial, Execution::serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(critical_points, parallel, Execution::parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(support, serial, Execution::serial)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(support, parallel, Execution::parallel)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
