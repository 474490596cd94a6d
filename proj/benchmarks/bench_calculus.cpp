#include <benchmark/benchmark.h>

#include <cmath>

#include "tsvar/calculus.hpp"

using namespace tsvar;

namespace {

TimeScale hybrid(NumericMode mode)
{
    return TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar::ratio(3, 2)), Piece::point(Scalar(2))},
                     mode);
}

ScaleFn cubic()
{
    return ScaleFn::polynomial(Polynomial::parse("t^3 - 2*t + 1", {"t"}));
}

void BM_DeltaIntegralDiscrete(benchmark::State& state)
{
    TimeScale T = TimeScale::integers(0, state.range(0));
    ScaleFn f = cubic();
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_integral(T, f, Scalar(0), Scalar(state.range(0))));
    }
}
BENCHMARK(BM_DeltaIntegralDiscrete)->Arg(16)->Arg(128)->Arg(1024);

void BM_DeltaIntegralHybrid(benchmark::State& state)
{
    TimeScale T = hybrid(NumericMode::floating);
    ScaleFn f = ScaleFn::from_double([](double t) { return std::exp(t) * t; }, Smoothness::c1rd);
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_integral(T, f, Scalar(0.0), Scalar(2.0)));
    }
}
BENCHMARK(BM_DeltaIntegralHybrid);

void BM_DeltaDerivScattered(benchmark::State& state)
{
    TimeScale T = hybrid(NumericMode::rational);
    ScaleFn f = cubic();
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_deriv(T, f, Scalar(1)));
    }
}
BENCHMARK(BM_DeltaDerivScattered);

void BM_DeltaDerivDense(benchmark::State& state)
{
    TimeScale T = hybrid(NumericMode::floating);
    ScaleFn f = ScaleFn::from_double([](double t) { return std::sin(3 * t); }, Smoothness::c1rd);
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_deriv(T, f, Scalar(0.4)));
    }
}
BENCHMARK(BM_DeltaDerivDense);

} // namespace
