#include <benchmark/benchmark.h>

#include "tsvar/variational.hpp"

using namespace tsvar;

namespace {

void BM_FlKernel(benchmark::State& state)
{
    TimeScale T = TimeScale::integers(0, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fl_kernel(T, KernelVariant::delta, Scalar(0), Scalar(state.range(0))));
    }
}
BENCHMARK(BM_FlKernel)->Arg(8)->Arg(32);

void BM_BruteForceMinimizer(benchmark::State& state)
{
    const long n = state.range(0);
    VariationalProblem p(TimeScale::integers(0, n), Lagrangian::builtin("v2+y2"), Scalar(0), Scalar(n), Scalar(0),
                         Scalar(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_minimizer(p));
    }
}
BENCHMARK(BM_BruteForceMinimizer)->Arg(4)->Arg(8);

void BM_ElResidual(benchmark::State& state)
{
    VariationalProblem p(TimeScale::integers(0, 64), Lagrangian::builtin("harmonic"), Scalar(0), Scalar(64), Scalar(0),
                         Scalar(1));
    ScaleFn y = ScaleFn::polynomial(Polynomial::parse("t/64", {"t"}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(el_residual(p, y));
    }
}
BENCHMARK(BM_ElResidual);

} // namespace
