#include <benchmark/benchmark.h>

#include <random>

#include "texcurve/analysis.hpp"
#include "texcurve/encoder.hpp"
#include "texcurve/texture_eval.hpp"

using namespace texcurve;

namespace {

ControlPolygon bench_polygon() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<Vec> pts;
  for (int i = 0; i <= 5; ++i) pts.push_back(Vec{dist(rng), dist(rng), dist(rng)});
  return ControlPolygon(std::move(pts));
}

const ControlPolygon kPolygon = bench_polygon();
const EncodedCurve kCurve = encode_seiler(kPolygon, {TexelFormat::unorm16, true});

std::vector<double> parameters(std::size_t n) {
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return ts;
}

template <auto Batch>
void batch(benchmark::State& state) {
  const auto ts = parameters(static_cast<std::size_t>(state.range(0)));
  std::vector<Vec> out(ts.size());
  for (auto _ : state) {
    Batch(kCurve, Mode::seiler, ts, SamplerConfig{}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Sweep>
void sweeps(benchmark::State& state) {
  const Reference ref = bernstein_reference(kPolygon);
  for (auto _ : state) {
    ErrorReport r = Sweep(kCurve, ref, Mode::seiler, SamplerConfig{}, static_cast<int>(state.range(0)), {});
    benchmark::DoNotOptimize(r.summary.max);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(batch<evaluate_batch>)->Name("evaluate_batch/parallel")->Range(1 << 10, 1 << 18);
BENCHMARK(batch<evaluate_batch_serial>)->Name("evaluate_batch/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(sweeps<sweep>)->Name("sweep/parallel")->Range(1 << 10, 1 << 16);
BENCHMARK(sweeps<sweep_serial>)->Name("sweep/serial")->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
