#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "strust/strust.hpp"

namespace {

// Heavy-tailed message log shaped like a small private-message network.
std::string synthetic_edge_list(int members, int events) {
  std::mt19937_64 rng(7);
  std::geometric_distribution<int> sender(8.0 / members);
  std::uniform_int_distribution<int> any(1, members);
  std::string text;
  text.reserve(static_cast<std::size_t>(events) * 24);
  for (int i = 0; i < events; ++i) {
    const int src = 1 + sender(rng) % members;
    int dst = any(rng);
    if (dst == src) dst = dst % members + 1;
    text += std::to_string(src) + ' ' + std::to_string(dst) + ' ' + std::to_string(1082000000 + i) + '\n';
  }
  return text;
}

const std::string& edge_list() {
  static const std::string text = synthetic_edge_list(2000, 60000);
  return text;
}

const strust::InteractionStore& store() {
  static const auto s = strust::ingest_edge_list(edge_list(), strust::FormatSpec::parse("collegemsg")).store;
  return s;
}

void BM_Ingest(benchmark::State& state) {
  const auto spec = strust::FormatSpec::parse("collegemsg");
  for (auto _ : state) benchmark::DoNotOptimize(strust::ingest_edge_list(edge_list(), spec));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * edge_list().size()));
}
BENCHMARK(BM_Ingest)->Unit(benchmark::kMillisecond);

void BM_ScoreAll(benchmark::State& state) {
  const auto& s = store();
  for (auto _ : state) benchmark::DoNotOptimize(strust::score_all(s, strust::Alpha(0.5)));
}
BENCHMARK(BM_ScoreAll)->Unit(benchmark::kMillisecond);

void BM_RunRemoval(benchmark::State& state) {
  const strust::RemovalSpec spec{strust::TrustKind::social(strust::Alpha(0.5)), {5, 10, 15}};
  const auto& s = store();
  for (auto _ : state) benchmark::DoNotOptimize(strust::run_removal(s, spec, strust::Alpha(0.5)));
}
BENCHMARK(BM_RunRemoval)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
