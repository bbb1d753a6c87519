#include <benchmark/benchmark.h>

#include "sphfin/expr.hpp"
#include "sphfin/geometry.hpp"

using namespace sphfin;

namespace {

const PhiExpr& sample_phi() {
    static const PhiExpr phi = PhiExpr::parse("exp(0.3*s)*sqrt(1 + r^2 + s^2)");
    return phi;
}

}  // namespace

static void SprayFromPhi(benchmark::State& state) {
    const Jet j = sample_phi().eval_jet(1.1, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(spray_pq(j));
}
BENCHMARK(SprayFromPhi);

static void BerwaldTensor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SprayData pq = spray_pq(sample_phi().eval_jet(1.1, 0.4));
    const PointFrame f = embed_point(1.1, 0.4, 1.0, n);
    for (auto _ : state) benchmark::DoNotOptimize(berwald_curvature(pq, f));
    state.SetComplexityN(n);
}
BENCHMARK(BerwaldTensor)->DenseRange(2, 8, 2)->Complexity();

static void LandsbergTensor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Jet j = sample_phi().eval_jet(1.1, 0.4);
    const SprayData pq = spray_pq(j);
    const PointFrame f = embed_point(1.1, 0.4, 1.0, n);
    for (auto _ : state) benchmark::DoNotOptimize(landsberg_curvature(j, pq, f));
}
BENCHMARK(LandsbergTensor)->DenseRange(2, 8, 2);

static void CurvaturePacket3(benchmark::State& state) {
    const Jet j = sample_phi().eval_jet(1.1, 0.4);
    const PointFrame f = embed_point(1.1, 0.4, 1.0, 3);
    for (auto _ : state) benchmark::DoNotOptimize(curvature_packet(j, f));
}
BENCHMARK(CurvaturePacket3);

BENCHMARK_MAIN();
