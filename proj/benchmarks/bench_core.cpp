#include "triquad/optimizer.hpp"
#include "triquad/ortho_basis.hpp"
#include "triquad/rule.hpp"
#include "triquad/weights.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace triquad;

// The optimizer's first starting configuration: well conditioned at every d,
// unlike uniform random points beyond d = 8.
std::vector<TrianglePoint> start_points(int d)
{
    return initial_points(d, default_target_e(d), 0, OptimizerConfig{});
}

void BM_Vandermonde(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    const auto pts = start_points(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(vandermonde({d, true}, pts, true));
}
BENCHMARK(BM_Vandermonde)->Arg(5)->Arg(10)->Arg(14);

void BM_NewtonCotesWeights(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    const auto pts = start_points(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(newton_cotes_weights({d, true}, pts));
}
BENCHMARK(BM_NewtonCotesWeights)->Arg(5)->Arg(10);

// Residual, weights and Jacobian together, as one optimizer iteration needs.
void BM_ResidualModel(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    const auto pts = start_points(d);
    const int e = default_target_e(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(ResidualModel::evaluate(d, e, pts));
}
BENCHMARK(BM_ResidualModel)->Arg(5)->Arg(10);

void BM_Certify(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    const QuadratureRule rule = make_cardinal_rule(d, start_points(d));
    for (auto _ : state)
        benchmark::DoNotOptimize(certify(rule));
}
BENCHMARK(BM_Certify)->Arg(5)->Arg(10);

} // namespace

BENCHMARK_MAIN();
