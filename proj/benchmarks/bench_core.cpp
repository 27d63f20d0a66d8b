#include <benchmark/benchmark.h>

#include <numbers>

#include "qmetric/divergence.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/tradeoff.hpp"

using namespace qmetric;

namespace {

constexpr double kPi = std::numbers::pi;

RealVector theta1(double t) {
    return RealVector::Constant(1, t);
}

DensityMatrix random_state(std::uint64_t seed, Eigen::Index dim) {
    Rng rng(seed);
    Matrix a = rng.gaussian_matrix(dim, dim);
    Matrix hs = a * a.adjoint();
    hs /= hs.trace().real();
    return DensityMatrix(0.9 * hs + 0.1 * Matrix::Identity(dim, dim) / double(dim));
}

}  // namespace

static void BM_Eigh(benchmark::State& state) {
    Rng rng(11);
    const Matrix h = rng.hermitian_gaussian(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(h));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigh)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_QuantumFisher(benchmark::State& state) {
    auto model = random_model(state.range(0), 1, 21);
    const ModelPoint pt = evaluate(model, theta1(0.4));
    const auto metric = sld_metric();
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum_fisher(pt, metric));
    }
}
BENCHMARK(BM_QuantumFisher)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

static void BM_Disturbance(benchmark::State& state) {
    auto model = random_model(2, 1, 31);
    auto meas = random_measurement(2, state.range(0), 2, 32);
    const ModelPoint pt = evaluate(model, theta1(0.4));
    const auto metric = bkm_metric();
    for (auto _ : state) {
        benchmark::DoNotOptimize(disturbance(pt, meas, metric));
    }
}
BENCHMARK(BM_Disturbance)->Arg(2)->Arg(4)->Arg(8);

static void BM_CheckTradeoff(benchmark::State& state) {
    auto inst = random_tradeoff_instance(state.range(0), 41);
    const auto metric = sld_metric();
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_tradeoff(inst.model, inst.meas, inst.theta, metric));
    }
}
BENCHMARK(BM_CheckTradeoff)->Arg(2)->Arg(3);

static void BM_CheckSeparating(benchmark::State& state) {
    auto inst = random_tradeoff_instance(state.range(0), 51);
    const auto metric = rld_metric();
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_separating(inst.model, inst.meas, inst.theta, metric));
    }
}
BENCHMARK(BM_CheckSeparating)->Arg(2)->Arg(3);

static void BM_QuantumRelativeEntropy(benchmark::State& state) {
    const auto rho = random_state(61, state.range(0));
    const auto sigma = random_state(62, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantum_relative_entropy(rho, sigma));
    }
}
BENCHMARK(BM_QuantumRelativeEntropy)->Arg(2)->Arg(4)->Arg(8);

static void BM_BsRelativeEntropy(benchmark::State& state) {
    const auto rho = random_state(71, state.range(0));
    const auto sigma = random_state(72, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bs_relative_entropy(rho, sigma));
    }
}
BENCHMARK(BM_BsRelativeEntropy)->Arg(2)->Arg(4)->Arg(8);

static void BM_RoyerScanPoint(benchmark::State& state) {
    auto model = classical_binary_model();
    for (auto _ : state) {
        auto meas = royer(kPi / 2.0, 0.7);
        benchmark::DoNotOptimize(check_rld_equality(model, meas, theta1(1.1)));
    }
}
BENCHMARK(BM_RoyerScanPoint);

BENCHMARK_MAIN();
