#include <benchmark/benchmark.h>

#include "sgdf/besov.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/good_function.hpp"
#include "sgdf/graph.hpp"
#include "sgdf/resistance.hpp"
#include "sgdf/rng.hpp"

using namespace sgdf;

static void BM_BuildGraph(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_graph(level));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(4)->Arg(6)->Arg(8);

static void BM_GraphEnergy(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const CellGraph g = build_graph(level);
  Rng rng(1);
  CellFunction u;
  u.level = level;
  u.values.resize(word_count(level));
  for (auto& v : u.values) v = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph_energy(u, g).scaled);
  }
}
BENCHMARK(BM_GraphEnergy)->Arg(6)->Arg(8);

static void BM_ExactAverages(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const GoodFunction U{Rational(1), Rational(0), Rational(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_cell_averages(U, level));
  }
}
BENCHMARK(BM_ExactAverages)->Arg(6)->Arg(8);

static void BM_CornerResistance(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const ResistorNetwork net = network_from_graph(build_graph(level));
  const int a = static_cast<int>(Word::repeated(0, level).index());
  const int b = static_cast<int>(Word::repeated(1, level).index());
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_resistance(net, a, b));
  }
}
BENCHMARK(BM_CornerResistance)->Arg(4)->Arg(6)->Arg(7);

static void BM_DiscreteSeries(benchmark::State& state) {
  const GoodFunction U{Rational(1), Rational(0), Rational(0)};
  const ProfileSource src = profile_source(U);
  const double beta = walk_dimension() - 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_Ebeta(src, beta, 1e-9).value);
  }
}
BENCHMARK(BM_DiscreteSeries);

static void BM_PairQuadrature(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const HarmonicSpline u =
      HarmonicSpline::from_good(GoodFunction{Rational(1), Rational(0), Rational(0)});
  const BesovGrid grid(depth);
  const CellFunction avg_m1 = to_double(u.averages(depth + 1));
  const CellFunction avg_m = mean_value(avg_m1, depth);
  const double beta = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid.double_integral(avg_m.values, avg_m1.values, beta));
  }
}
BENCHMARK(BM_PairQuadrature)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
