// Serial reference against OpenMP kernels. Arg 0 selects Serial, 1 Parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "coposolve/kernels.hpp"
#include "coposolve/p_copositivity.hpp"

using namespace coposolve;

namespace {

SymMatrix random_matrix(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = i == j ? std::abs(U(rng)) : U(rng);
    return SymMatrix(n, e);
}

kernels::Execution mode(const benchmark::State& s) {
    return s.range(0) == 0 ? kernels::Execution::Serial : kernels::Execution::Parallel;
}

void BM_FaceCandidates(benchmark::State& state) {
    const auto B = random_matrix(std::size_t(state.range(1)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::face_candidates(B, mode(state)));
}
BENCHMARK(BM_FaceCandidates)->ArgsProduct({{0, 1}, {8, 12}})->Unit(benchmark::kMillisecond);

void BM_GridScan(benchmark::State& state) {
    const auto B = b_epsilon(0.05);
    const std::vector<double> mu{1.0, 0.8, 0.8};
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::scan_p_form_grid(B, mu, 4.0, int(state.range(1)), 32, mode(state)));
}
BENCHMARK(BM_GridScan)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);

void BM_NeumannResidual(benchmark::State& state) {
    const SymMatrix B{{1.0, -2.0}, {-2.0, 1.0}};
    const int m = int(state.range(1));
    const kernels::BoxShape box{2, m, 1.0 / (m - 1)};
    std::vector<double> u(2 * box.nodes()), r(u.size());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    for (double& v : u) v = U(rng);
    for (auto _ : state) {
        kernels::neumann_residual(B, 4.0, box, u, r, mode(state));
        benchmark::DoNotOptimize(r.data());
    }
}
BENCHMARK(BM_NeumannResidual)->ArgsProduct({{0, 1}, {129, 513}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
