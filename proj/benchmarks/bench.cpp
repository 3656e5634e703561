#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kuramoto/coupling.hpp"
#include "kuramoto/frequencies.hpp"
#include "kuramoto/order_field.hpp"
#include "kuramoto/random.hpp"
#include "kuramoto/simulate.hpp"

namespace {

std::vector<double> random_phases(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> x(n);
    for (double& v : x) v = kuramoto::uniform_angle(rng);
    return x;
}

void BM_coupling_field(benchmark::State& state) {
    const auto x = random_phases(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::coupling_field(x));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_coupling_field)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_order_parameter(benchmark::State& state) {
    const auto x = random_phases(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::order_parameter(x));
    }
}
BENCHMARK(BM_order_parameter)->Arg(256)->Arg(4096);

void BM_reduced_jacobian(benchmark::State& state) {
    const auto x = random_phases(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::reduced_jacobian(x));
    }
}
BENCHMARK(BM_reduced_jacobian)->Arg(16)->Arg(64)->Arg(256);

void BM_compute_kc(benchmark::State& state) {
    const auto spec =
        kuramoto::sample_normal(static_cast<std::size_t>(state.range(0)), 0.0, 1.0, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::compute_kc(spec));
    }
}
BENCHMARK(BM_compute_kc)->RangeMultiplier(4)->Range(8, 2048);

void BM_existence_at(benchmark::State& state) {
    const auto spec =
        kuramoto::sample_normal(static_cast<std::size_t>(state.range(0)), 0.0, 1.0, 7);
    const double k = 1.05 * kuramoto::compute_kc(spec).kc;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::existence_at(spec, k));
    }
}
BENCHMARK(BM_existence_at)->Arg(32)->Arg(512);

void BM_enumerate_fixed_points(benchmark::State& state) {
    const auto spec =
        kuramoto::sample_normal(static_cast<std::size_t>(state.range(0)), 0.0, 1.0, 11);
    const double k = 10.0 * kuramoto::upper_bound(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::enumerate_fixed_points(spec, k));
    }
}
BENCHMARK(BM_enumerate_fixed_points)->DenseRange(6, 10, 2);

void BM_integrate(benchmark::State& state) {
    const auto spec =
        kuramoto::sample_normal(static_cast<std::size_t>(state.range(0)), 0.0, 1.0, 3);
    kuramoto::SimConfig cfg;
    cfg.k = 2.0 * kuramoto::inf_norm(spec.view());
    cfg.t_end = 1.0;
    cfg.record_every = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kuramoto::integrate(spec, cfg));
    }
}
BENCHMARK(BM_integrate)->Arg(64)->Arg(512);

} // namespace

BENCHMARK_MAIN();
