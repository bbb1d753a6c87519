#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "sphfin/builtins.hpp"
#include "sphfin/classify.hpp"
#include "sphfin/geodesics.hpp"
#include "sphfin/metric_source.hpp"
#include "sphfin/reconstruct.hpp"

using namespace sphfin;

static void ClassifyClosedForm(benchmark::State& state) {
    const MetricSource src = MetricSource::from_builtin(builtin("zhou2d_r6"));
    for (auto _ : state) benchmark::DoNotOptimize(classify_metric(src, 2));
}
BENCHMARK(ClassifyClosedForm)->Unit(benchmark::kMillisecond);

static void ClassifyLogDerivative(benchmark::State& state) {
    const MetricSource src = MetricSource::from_builtin(builtin("example1"));
    for (auto _ : state) benchmark::DoNotOptimize(classify_metric(src, 3));
}
BENCHMARK(ClassifyLogDerivative)->Unit(benchmark::kMillisecond);

static void ReconstructExampleTwo(benchmark::State& state) {
    const auto src = std::make_shared<ExprLogDerivs>(builtin("example2").logderivs());
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_phi(src, GridSpec{}, 1, 1));
}
BENCHMARK(ReconstructExampleTwo)->Unit(benchmark::kMillisecond);

static void GeodesicQuadratic(benchmark::State& state) {
    const MetricSource src = MetricSource::from_builtin(
        builtin("riemann_quadratic", {{"f1", PhiExpr::number(1)}, {"f2", PhiExpr::number(1)}}));
    Eigen::VectorXd x(3), y(3);
    x << 1, 0, 0;
    y << 0.2, 1, 0.3;
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(src, x, y, 1e-3, steps));
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(GeodesicQuadratic)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
