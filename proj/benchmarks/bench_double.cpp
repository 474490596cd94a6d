#include <benchmark/benchmark.h>

#include "tsvar/product.hpp"

using namespace tsvar;

namespace {

SurfaceFn surface(std::string_view text)
{
    return SurfaceFn::polynomial(Polynomial::parse(text, {"t1", "t2"}));
}

void BM_DerivationChain(benchmark::State& state)
{
    const long n = state.range(0);
    ProductScale ps(TimeScale::integers(0, n), TimeScale::integers(0, n));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("full"));
    SurfaceFn u = surface("t1^2 + t1*t2");
    SurfaceFn eta = surface("t1*(" + std::to_string(n) + "-t1)*t2*(" + std::to_string(n) + "-t2)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(derivation_chain_check(dp, u, eta));
    }
}
BENCHMARK(BM_DerivationChain)->Arg(4)->Arg(8);

void BM_DoubleMinimizer(benchmark::State& state)
{
    const long n = state.range(0);
    ProductScale ps(TimeScale::integers(0, n), TimeScale::integers(0, n));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("dirichlet"));
    SurfaceFn boundary = surface("t1^2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_double_minimizer(dp, boundary));
    }
}
BENCHMARK(BM_DoubleMinimizer)->Arg(4)->Arg(8);

void BM_FubiniResidual(benchmark::State& state)
{
    ProductScale ps(TimeScale({Piece::interval(Scalar(0.0), Scalar(1.0)), Piece::point(Scalar(2.0))},
                              NumericMode::floating),
                    TimeScale::integers(0, 3, NumericMode::floating));
    SurfaceFn f = surface("t1*t2 + t2^2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(fubini_residual(ps, f, Rect{Scalar(0.0), Scalar(2.0), Scalar(0.0), Scalar(3.0)}));
    }
}
BENCHMARK(BM_FubiniResidual);

} // namespace
