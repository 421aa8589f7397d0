#include "hyperpotential/halfspace.hpp"
#include "hyperpotential/kernels.hpp"
#include "hyperpotential/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace hyperpotential;

namespace {

void BM_Kernel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::int64_t mu = -6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(OperatorId::dirac(mu), m));
    mu = mu == 6 ? -6 : mu + 1;
  }
}
BENCHMARK(BM_Kernel)->DenseRange(2, 6, 2);

void BM_LogKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_kernel(4, n));
  }
}
BENCHMARK(BM_LogKernel)->Arg(0)->Arg(6)->Arg(12);

void BM_ConvolveExact(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto a = kernel(OperatorId::hilbert_dirac(3), m);
  const auto b = kernel(OperatorId::hilbert_dirac(-2), m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(a, b));
  }
}
BENCHMARK(BM_ConvolveExact)->Arg(3)->Arg(8);

void BM_ConvolveNumeric(benchmark::State& state) {
  const auto a = kernel(NumericOperatorId{Family::DiracPow, {0.3, 0.2}}, 3);
  const auto b = kernel(NumericOperatorId{Family::DiracPow, {-1.1, 0.45}}, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(a, b));
  }
}
BENCHMARK(BM_ConvolveNumeric);

void BM_VerifyIdentity(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_identity("prop41", m));
  }
}
BENCHMARK(BM_VerifyIdentity)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_VerifyCatalog(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& info : identity_catalog()) {
      benchmark::DoNotOptimize(verify_identity(info.name, 5));
    }
  }
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);

void BM_PairGaussian(benchmark::State& state) {
  const auto e = to_numeric(kernel(OperatorId::laplace(-3), 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_gaussian(e));
  }
}
BENCHMARK(BM_PairGaussian);

void BM_PairQuadrature(benchmark::State& state) {
  const auto e = NumericExpr::single(3, AtomKind::T, {-5.3, 0.0}, 1.0);
  const auto phi = TestFunction::gaussian();
  const int order = minimal_subtraction_order(e, phi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_quadrature(e, phi, order));
  }
}
BENCHMARK(BM_PairQuadrature)->Unit(benchmark::kMicrosecond);

void BM_ConvolutionBruteForce(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolution_brute_force(3, -2.0, -2.0));
  }
}
BENCHMARK(BM_ConvolutionBruteForce)->Unit(benchmark::kMillisecond);

void BM_EvaluatePotential(benchmark::State& state) {
  const PotentialId id{PotentialFamily::C, static_cast<int>(state.range(0))};
  const HalfSpacePoint p{0.7, {0.3, -0.2, 0.5, 0.1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(id, p));
  }
}
BENCHMARK(BM_EvaluatePotential)->DenseRange(-3, 2);

void BM_MonogenicityResidual(benchmark::State& state) {
  const HalfSpacePoint p{1.0, {0.3, -0.2, 0.5}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(monogenicity_residual({PotentialFamily::C, 1}, p, 1e-3));
  }
}
BENCHMARK(BM_MonogenicityResidual)->Unit(benchmark::kMicrosecond);

void BM_BoundaryLimit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_limit_test({PotentialFamily::A, 1}, 5, TestFunction::gaussian()));
  }
}
BENCHMARK(BM_BoundaryLimit)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
