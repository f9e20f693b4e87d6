#include <vortexlab/phase.hpp>
#include <vortexlab/profiles.hpp>
#include <vortexlab/spectral.hpp>
#include <vortexlab/stability.hpp>

#include <benchmark/benchmark.h>

using namespace vortexlab;

namespace {

const Potential W = Potential::quadratic();
const Potential Wt = Potential::linear();

void BM_GLProfile(benchmark::State& st) {
    const auto g = make_grid(3, static_cast<int>(st.range(0)), Grading::graded(2.0));
    for (auto _ : st) benchmark::DoNotOptimize(solve_gl_profile(3, W, 0.1, g).residual_norm);
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GLProfile)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ExtendedEscaping(benchmark::State& st) {
    const auto g = make_grid(3, static_cast<int>(st.range(0)), Grading::graded(2.0));
    const auto gl = solve_gl_profile(3, W, 0.1, g);
    for (auto _ : st) benchmark::DoNotOptimize(solve_extended_profile(gl, W, Wt, 0.6, Branch::escaping).residual_norm);
}
BENCHMARK(BM_ExtendedEscaping)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Linearization(benchmark::State& st) {
    const auto g = make_grid(3, static_cast<int>(st.range(0)), Grading::graded(2.0));
    const auto gl = solve_gl_profile(3, W, 0.1, g);
    for (auto _ : st) benchmark::DoNotOptimize(gl_linearization_eigenvalue(gl, W).ell);
}
BENCHMARK(BM_Linearization)->Arg(500)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ModeBlockMinEigen(benchmark::State& st) {
    const auto g = make_grid(3, 2000, Grading::graded(2.0));
    const auto p = solve_extended_profile(3, W, Wt, 0.1, 0.6, g, Branch::escaping);
    const double lambda = harmonic_eigenvalue(3, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(mode_min_eigenvalue(mode_block(p, W, Wt, 0.1, 0.6, lambda)).eigenvalue);
}
BENCHMARK(BM_ModeBlockMinEigen)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_PhaseColumn(benchmark::State& st) {
    const auto g = make_grid(3, 1000, Grading::graded(2.0));
    const auto eta = parse_range("0.1:1.5:20");
    SweepOptions o;
    o.confirm_fraction = static_cast<double>(st.range(0)) / 100.0;
    for (auto _ : st) benchmark::DoNotOptimize(sweep(3, W, Wt, {0.1}, eta, g, o).points.size());
}
BENCHMARK(BM_PhaseColumn)->Arg(0)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
