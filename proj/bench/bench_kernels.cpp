// Serial vs OpenMP kernels on a synthetic corpus.

#include <benchmark/benchmark.h>

#include <map>

#include "generators.hpp"
#include "ooscan/analyzer.hpp"
#include "ooscan/parser.hpp"

namespace {

const std::vector<ooscan::SourceUnit>& corpus(std::size_t classes) {
  static std::map<std::size_t, std::vector<ooscan::SourceUnit>> cache;
  auto& units = cache[classes];
  if (units.empty()) {
    ooscan::testing::SyntheticOptions opts;
    opts.classes = classes;
    units = ooscan::testing::synthetic_units(opts);
  }
  return units;
}

const ooscan::ProjectParse& parsed(std::size_t classes) {
  static std::map<std::size_t, ooscan::ProjectParse> cache;
  auto it = cache.find(classes);
  if (it == cache.end()) {
    ooscan::ProjectParse p;
    p.units = corpus(classes);
    auto fragments = ooscan::parse_units_serial(p.units);
    p.model = ooscan::merge_fragments("Synthetic", fragments, p.units, p.diagnostics);
    ooscan::normalize(p.model);
    it = cache.emplace(classes, std::move(p)).first;
  }
  return it->second;
}

void BM_ParseSerial(benchmark::State& state) {
  const auto& units = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ooscan::parse_units_serial(units));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(units.size()));
}

void BM_ParseParallel(benchmark::State& state) {
  const auto& units = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ooscan::parse_units_parallel(units));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(units.size()));
}

void BM_PackageMetricsSerial(benchmark::State& state) {
  const auto& p = parsed(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ooscan::compute_package_metrics_serial(p.model, p.units));
  }
}

void BM_PackageMetricsParallel(benchmark::State& state) {
  const auto& p = parsed(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ooscan::compute_package_metrics(p.model, p.units));
  }
}

}  // namespace

BENCHMARK(BM_ParseSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParseParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PackageMetricsSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PackageMetricsParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
