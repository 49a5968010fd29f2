#include "sublevelstat/bottleneck.hpp"
#include "sublevelstat/estimator.hpp"
#include "sublevelstat/persistence.hpp"
#include "sublevelstat/random.hpp"
#include "sublevelstat/synth.hpp"

#include <benchmark/benchmark.h>

using namespace sublevelstat;

static void BM_PersistenceTwoBump(benchmark::State& state)
{
  auto mesh = triangulate(Manifold::disk(10), static_cast<int>(state.range(0)));
  auto values = eval_function(FunctionSpec::two_bump(), mesh.vertices);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_persistence(lower_star_filtration(mesh, values)));
  state.counters["vertices"] = static_cast<double>(mesh.vertices.size());
}
BENCHMARK(BM_PersistenceTwoBump)->Arg(10)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_PersistenceNoisySphere(benchmark::State& state)
{
  auto mesh = triangulate(Manifold::sphere(), static_cast<int>(state.range(0)));
  Rng rng(1);
  std::vector<double> values;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    values.push_back(rng.gaussian());
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_persistence(lower_star_filtration(mesh, values)));
}
BENCHMARK(BM_PersistenceNoisySphere)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BottleneckRandom(benchmark::State& state)
{
  Rng rng(2);
  auto points = [&] {
    std::vector<DiagramPoint> pts;
    for (int i = 0; i < state.range(0); ++i) {
      double b = rng.uniform(0, 1);
      pts.emplace_back(b, b + rng.uniform(0, 1));
    }
    return pts;
  };
  auto a = points();
  auto b = points();
  for (auto _ : state)
    benchmark::DoNotOptimize(bottleneck_finite(a, b));
}
BENCHMARK(BM_BottleneckRandom)->Arg(8)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_FitTwoBump(benchmark::State& state)
{
  EstimatorConfig cfg;
  cfg.L = 1.05;
  cfg.sigma = 0.3;
  const auto n = static_cast<std::size_t>(state.range(0));
  DesignSample s;
  s.points = sample_design(cfg.manifold, n, DesignScheme::Equidistant, 0);
  s.responses = add_noise(eval_function(FunctionSpec::two_bump(), s.points), cfg.sigma, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(fit(cfg, s));
}
BENCHMARK(BM_FitTwoBump)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
