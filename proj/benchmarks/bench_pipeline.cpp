#include <random>

#include <benchmark/benchmark.h>

#include "dynamap/mapbuilder.hpp"
#include "dynamap/pdr.hpp"
#include "dynamap/pf.hpp"
#include "dynamap/simulator.hpp"

using namespace dynamap;

namespace {

void BM_DcmUpdate(benchmark::State& state) {
  Attitude att;
  Eigen::Vector3d rate{0.3, -0.2, 1.1};
  for (auto _ : state) {
    att = dcm_update(att, rate, 0.01);
    benchmark::DoNotOptimize(att);
  }
}
BENCHMARK(BM_DcmUpdate);

void BM_DetectSteps(benchmark::State& state) {
  SimConfig sim;
  sim.accel_noise_sigma = 0.05;
  std::vector<Vec2> line{{0, 0}, {0, 60}};
  Track track = gen_walk(line, sim);
  std::vector<ImuSample> samples = synth_imu(track, sim);
  PdrConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_steps(samples, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples.size()));
}
BENCHMARK(BM_DetectSteps);

void BM_RunPfPdr(benchmark::State& state) {
  SimConfig sim;
  sim.accel_noise_sigma = 0.05;
  std::vector<Vec2> line{{2, 1}, {56, 1}};
  Track track = gen_walk(line, sim);
  std::vector<ImuSample> samples = synth_imu(track, sim);

  Floorplan corridor;
  corridor.bounds = {0, 0, 60, 2};
  corridor.walls.push_back({{0, 0}, {60, 0}});
  corridor.walls.push_back({{0, 2}, {60, 2}});

  PdrConfig pdr_cfg;
  PfConfig pf_cfg;
  pf_cfg.n_particles = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_pf_pdr(samples, track.entries.front().pose, corridor, pdr_cfg, pf_cfg, 11));
  }
}
BENCHMARK(BM_RunPfPdr)->Arg(200)->Arg(1000);

void BM_BuildDynamicMap(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(0.0, 40.0);
  std::uniform_real_distribution<double> rss(-95.0, -30.0);
  std::uniform_int_distribution<int> pick(0, 11);

  const int n = static_cast<int>(state.range(0));
  Track track;
  std::vector<WifiScan> scans;
  for (int k = 0; k < n; ++k) {
    track.entries.push_back({static_cast<double>(k), {coord(rng), coord(rng), 0.0}, k});
    WifiScan scan;
    scan.t = static_cast<double>(k);
    for (int a = 0; a < 6; ++a) {
      char buf[18];
      std::snprintf(buf, sizeof(buf), "02:00:00:00:00:%02x", pick(rng));
      scan.readings.set(MacId(buf), rss(rng));
    }
    scans.push_back(std::move(scan));
  }
  MergeConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dynamic_map(track, scans, cfg));
  }
}
BENCHMARK(BM_BuildDynamicMap)->Arg(40)->Arg(120);

}  // namespace
