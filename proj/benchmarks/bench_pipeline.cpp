#include <benchmark/benchmark.h>

#include "nonrecip/nonrecip.hpp"

namespace {

using namespace nonrecip;

const ScenarioBuild& fig3a() {
    static const ScenarioBuild build = build_scenario(fig3_panel('a'));
    return build;
}

void SmatrixClosed(benchmark::State& state) {
    const auto& b = fig3a();
    double omega = -5e4;
    for (auto _ : state) {
        omega = omega < 5e4 ? omega + 50.0 : -5e4;
        benchmark::DoNotOptimize(smatrix(b.bare, b.frame, b.solution.couplings, omega));
    }
}
BENCHMARK(SmatrixClosed);

void SmatrixDirect(benchmark::State& state) {
    const auto& b = fig3a();
    double omega = -5e4;
    for (auto _ : state) {
        omega = omega < 5e4 ? omega + 50.0 : -5e4;
        benchmark::DoNotOptimize(
            smatrix_direct(b.bare, b.frame, b.solution.couplings, omega));
    }
}
BENCHMARK(SmatrixDirect);

void HarmonicCatalogBuild(benchmark::State& state) {
    const auto& b = fig3a();
    for (auto _ : state) {
        benchmark::DoNotOptimize(perturbative_harmonics(b.bare, b.drives, b.chi));
    }
}
BENCHMARK(HarmonicCatalogBuild);

void CoefficientCatalogBuild(benchmark::State& state) {
    const auto& b = fig3a();
    const auto harmonics = perturbative_harmonics(b.bare, b.drives, b.chi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coefficient_catalog(harmonics, b.bare, b.frame));
    }
}
BENCHMARK(CoefficientCatalogBuild);

void IsolationPipeline(benchmark::State& state) {
    const auto base = fig3_panel('a');
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_scenario(base));
    }
}
BENCHMARK(IsolationPipeline);

void ObjectiveEval(benchmark::State& state) {
    const auto base = fig3_panel('a');
    const std::vector<FreeVar> vars = {FreeVar::delta, FreeVar::gamma_lc};
    const std::vector<double> point = {-2.6e3, 7.88e4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective_eval(vars, point, base));
    }
}
BENCHMARK(ObjectiveEval);

}  // namespace

BENCHMARK_MAIN();
