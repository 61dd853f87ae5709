#include <benchmark/benchmark.h>

#include <random>

#include "osm/discrete.hpp"
#include "osm/optimizer.hpp"
#include "osm/schwarz.hpp"
#include "osm/spectral.hpp"

using namespace osm;

namespace {

void BM_SpectralRadius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(gen), g(gen));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m));
}
BENCHMARK(BM_SpectralRadius)->Arg(2)->Arg(6)->Arg(14)->Arg(30)->Arg(62);

void BM_ConvergenceCurve(benchmark::State& state) {
  ProblemParams pp;
  pp.J = static_cast<int>(state.range(0));
  pp.delta = 1e-3;
  const auto grid = frequency_grid(pp, pp.delta / 2);
  const auto tp = asymptotic_params(Family::ventcell2, OptimizationScope::finite(pp.J), pp, pp.delta).params;
  for (auto _ : state) benchmark::DoNotOptimize(convergence_curve(pp, tp, grid).max_rho());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.samples.size()));
}
BENCHMARK(BM_ConvergenceCurve)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_RasIterate(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  ProblemParams pp;
  pp.J = 4;
  pp.delta = 2 * h;
  const auto dp = discretize(pp, h);
  const auto subs = strip_partition(dp, Robin1{7.0});
  Vector u = random_vector(dp.size(), 0x5EED);
  for (auto _ : state) {
    u = ras_iterate(dp, subs, u);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * dp.size());
}
BENCHMARK(BM_RasIterate)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
