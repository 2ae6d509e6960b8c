#include <benchmark/benchmark.h>

#include <thetaspec/certify.hpp>
#include <thetaspec/sparse_poly.hpp>
#include <thetaspec/spectrum.hpp>
#include <thetaspec/theta.hpp>

using namespace thetaspec;

namespace {

BallComplex ball(long double re, long double im = 0) { return BallComplex(Complex<long double>(re, im)); }

void BM_ThetaEval(benchmark::State& state) {
  const long double q = 0.1L * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(theta_eval(ball(q, 0.05L), ball(-7.5L, 0.3L), 1e-15L));
}
BENCHMARK(BM_ThetaEval)->DenseRange(1, 9, 4);

void BM_ThetaEvalEscalated(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta_eval(ball(0.95L), ball(-21.5L), 1e-12L));
}
BENCHMARK(BM_ThetaEvalEscalated);

void BM_ProductJet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta_product_jet(cplx(0.7L, 0.2L), cplx(-40, 3)));
}
BENCHMARK(BM_ProductJet);

void BM_TruncationResultant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(truncation_resultant());
}
BENCHMARK(BM_TruncationResultant)->Unit(benchmark::kMillisecond);

void BM_PerturbedResultant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_perturbed_resultant());
}
BENCHMARK(BM_PerturbedResultant)->Unit(benchmark::kMillisecond);

void BM_RootIsolation(benchmark::State& state) {
  const QPoly V(truncation_resultant());
  for (auto _ : state) benchmark::DoNotOptimize(isolate_real_roots(V, -1, 1));
}
BENCHMARK(BM_RootIsolation)->Unit(benchmark::kMillisecond);

void BM_SegmentSuite(benchmark::State& state) {
  SegmentSuiteOptions opts;
  opts.tables = TableSource::derived;
  opts.parallelism = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_segment_suite(opts));
}
BENCHMARK(BM_SegmentSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RoucheK(benchmark::State& state) {
  const IntPoly V = truncation_resultant();
  const mpq_class t(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(rouche_zero_count({-t, t, -t, t}, V));
}
BENCHMARK(BM_RoucheK)->Unit(benchmark::kMillisecond);

void BM_DoubleZero(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_double_zero(cplx(0.31L), cplx(-7.5L), 1e-12L));
}
BENCHMARK(BM_DoubleZero)->Unit(benchmark::kMillisecond);

void BM_RealScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(real_spectrum_scan(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_RealScan)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TrackZero(benchmark::State& state) {
  const auto path = linear_path(cplx(0.02L), cplx(0.3L), 100);
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(track_zero(j, path));
}
BENCHMARK(BM_TrackZero)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_OmegaCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(omega_k_count(cplx(0.7L), 20, 0.1L));
}
BENCHMARK(BM_OmegaCount)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
