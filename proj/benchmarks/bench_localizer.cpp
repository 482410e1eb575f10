#include <random>

#include <benchmark/benchmark.h>

#include "dynamap/localizer.hpp"
#include "dynamap/types.hpp"

using namespace dynamap;

namespace {

MacId mac(int i) {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "02:00:00:00:00:%02x", i & 0xff);
  return MacId(buf);
}

RadioMap make_map(int n_points, int n_aps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 80.0);
  std::uniform_real_distribution<double> rss(-95.0, -30.0);
  std::uniform_int_distribution<int> pick(0, n_aps - 1);
  RadioMap map;
  for (int i = 0; i < n_points; ++i) {
    ReferencePoint rp;
    rp.id = i;
    rp.position = {coord(rng), coord(rng)};
    for (int a = 0; a < n_aps / 2; ++a) rp.fingerprint.set(mac(pick(rng)), rss(rng));
    map.points.push_back(std::move(rp));
  }
  return map;
}

Fingerprint make_query(int n_aps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rss(-95.0, -30.0);
  Fingerprint fp;
  for (int a = 0; a < n_aps; ++a) fp.set(mac(a), rss(rng));
  return fp;
}

void BM_RankReferencePoints(benchmark::State& state) {
  RadioMap map = make_map(static_cast<int>(state.range(0)), 16, 42);
  Fingerprint query = make_query(10, 43);
  LocalizerConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_reference_points(query, map, cfg));
  }
}
BENCHMARK(BM_RankReferencePoints)->Arg(64)->Arg(256)->Arg(1024);

void BM_EstimateWknn(benchmark::State& state) {
  RadioMap map = make_map(static_cast<int>(state.range(0)), 16, 42);
  Fingerprint query = make_query(10, 43);
  LocalizerConfig cfg;
  cfg.k = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_wknn(query, map, cfg));
  }
}
BENCHMARK(BM_EstimateWknn)->Arg(64)->Arg(1024);

void BM_BayesPosterior(benchmark::State& state) {
  RadioMap map = make_map(static_cast<int>(state.range(0)), 16, 42);
  Fingerprint query = make_query(10, 43);
  LocalizerConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes_posterior(query, map, cfg));
  }
}
BENCHMARK(BM_BayesPosterior)->Arg(64)->Arg(1024);

}  // namespace
