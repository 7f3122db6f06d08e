// Microbenchmarks for the hot paths: separation products, generating-function
// evaluation, multiplier evaluation and line sweeps, the interpolation solve,
// and the control pipeline.
#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include <pwinterp/biorthogonal.hpp>
#include <pwinterp/control.hpp>
#include <pwinterp/generating_function.hpp>
#include <pwinterp/interpolation.hpp>
#include <pwinterp/multiplier.hpp>
#include <pwinterp/sequence.hpp>
#include <pwinterp/sequence_analysis.hpp>

using namespace pwinterp;

static void BM_SeparationProduct(benchmark::State& state) {
  const auto seq = horizontal_line_nodes(1.0, -500, 500);
  const HalfPlane hp{};
  for (auto _ : state) benchmark::DoNotOptimize(separation_product_at(seq, 500, hp));
}
BENCHMARK(BM_SeparationProduct);

static void BM_GeneratingFunctionEval(benchmark::State& state) {
  const auto gen = GeneratingFunction::from_sequence(perturbed_integer_nodes(2.0, 25));
  const Complex z(17.3, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(gen.evaluate(z));
}
BENCHMARK(BM_GeneratingFunctionEval);

static void BM_MultiplierEval(benchmark::State& state) {
  const auto mult = BumpMultiplier::build(0.5);
  const Complex z(3.7, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(mult.evaluate(z));
}
BENCHMARK(BM_MultiplierEval);

static void BM_MultiplierSampleLine(benchmark::State& state) {
  const auto mult = BumpMultiplier::build(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(mult.sample_line(0.5, -20.0, 0.05, 801));
}
BENCHMARK(BM_MultiplierSampleLine);

static void BM_SolveInterpolation(benchmark::State& state) {
  const auto seq = perturbed_integer_nodes(2.0, 25);
  const auto fam =
      std::make_shared<const BiorthogonalFamily>(BiorthogonalFamily::from_generating(
          GeneratingFunction::from_sequence(seq)));
  const auto mult = std::make_shared<const BumpMultiplier>(BumpMultiplier::build(0.5));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Complex> data(fam->size());
  double s = 0.0;
  for (auto& v : data) {
    v = Complex(g(rng), g(rng));
    s += std::norm(v);
  }
  for (auto& v : data) v /= std::sqrt(s);
  for (auto _ : state) {
    InterpolationProblem prob{seq, data, 2.0, M_PI, 0.5, {}};
    benchmark::DoNotOptimize(solve_interpolation(prob, *fam, mult));
  }
}
BENCHMARK(BM_SolveInterpolation)->Unit(benchmark::kMillisecond);

static void BM_MinNormControl(benchmark::State& state) {
  std::vector<Complex> rates, couplings;
  for (int k = 1; k <= 10; ++k) {
    rates.emplace_back(double(k), 0.0);
    couplings.emplace_back(1.0, 0.0);
  }
  const auto sys = make_diagonal_system(rates, couplings);
  std::vector<Complex> x0(10, Complex(0.0, 0.0)), x1(10, Complex(0.0, 0.0));
  x1[0] = Complex(1.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_control(sys, 1.0, x0, x1));
}
BENCHMARK(BM_MinNormControl)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  std::vector<Complex> rates, couplings;
  for (int k = 1; k <= 10; ++k) {
    rates.emplace_back(double(k), 0.0);
    couplings.emplace_back(1.0, 0.0);
  }
  const auto sys = make_diagonal_system(rates, couplings);
  std::vector<Complex> x0(10, Complex(0.0, 0.0)), x1(10, Complex(0.0, 0.0));
  x1[0] = Complex(1.0, 0.0);
  const auto rep = min_norm_control(sys, 1.0, x0, x1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(sys, 1.0, x0, rep.signal));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
