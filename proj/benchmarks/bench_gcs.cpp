// Timings for the hot paths: eigenfunction recurrences, series
// construction, density and current grids, and the fidelity trace with
// quasiperiod refinement.  Grid sizes mirror what the front end emits for
// a plot-quality figure.
#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "gcs/coherent.hpp"
#include "gcs/dynamics.hpp"
#include "gcs/ladder.hpp"
#include "gcs/observables.hpp"
#include "gcs/oscillator.hpp"

namespace {

gcs::UnitSystem bench_units() {
  gcs::UnitSystem units;
  units.omega = 1.0;
  units.k = 1.0;
  units.branch = 1;
  return units;
}

std::vector<double> bench_grid(const gcs::UnitSystem& units, double r,
                               int points) {
  gcs::QuadratureRule rule = gcs::QuadratureRule::standard(units, r);
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = rule.x_min + (rule.x_max - rule.x_min) * i / (points - 1);
  }
  return xs;
}

void BM_EvalPsi(benchmark::State& state) {
  gcs::UnitSystem units = bench_units();
  int n = static_cast<int>(state.range(0));
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcs::eval_psi(n, x, units));
  }
}
BENCHMARK(BM_EvalPsi)->Arg(10)->Arg(100)->Arg(500);

void BM_SeriesConstruction(benchmark::State& state) {
  gcs::LadderSpec spec = gcs::LadderSpec::oscillator();
  double r = static_cast<double>(state.range(0));
  std::complex<double> alpha = std::polar(r, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gcs::bgcs(spec, gcs::LayerKind::Bilayer, alpha, 1e-12));
  }
}
BENCHMARK(BM_SeriesConstruction)->Arg(1)->Arg(5);

void BM_DensityGrid(benchmark::State& state) {
  gcs::UnitSystem units = bench_units();
  gcs::LadderSpec spec = gcs::LadderSpec::oscillator();
  gcs::CoherentSeries series =
      gcs::bgcs(spec, gcs::LayerKind::Bilayer, std::polar(5.0, 0.6), 1e-12);
  std::vector<double> xs =
      bench_grid(units, 5.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcs::probability_density(series, xs, units));
  }
}
BENCHMARK(BM_DensityGrid)->Arg(401)->Arg(4001);

void BM_CurrentGrid(benchmark::State& state) {
  gcs::UnitSystem units = bench_units();
  gcs::LadderSpec spec = gcs::LadderSpec::oscillator();
  gcs::CoherentSeries series =
      gcs::bgcs(spec, gcs::LayerKind::Bilayer, std::polar(3.0, 0.6), 1e-12);
  std::vector<double> xs =
      bench_grid(units, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcs::current_density(series, xs, units));
  }
}
BENCHMARK(BM_CurrentGrid)->Arg(401)->Arg(801);

void BM_FidelityTrace(benchmark::State& state) {
  gcs::LadderSpec spec = gcs::LadderSpec::oscillator();
  gcs::CoherentSeries series = gcs::bgcs(
      spec, gcs::LayerKind::Bilayer, std::complex<double>(5.0, 0.0), 1e-12);
  int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gcs::quasiperiod_scan(series, 25.0, samples, 0.8));
  }
}
BENCHMARK(BM_FidelityTrace)->Arg(501)->Arg(2001);

}  // namespace

BENCHMARK_MAIN();
