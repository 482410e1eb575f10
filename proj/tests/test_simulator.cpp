#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dynamap/geometry.hpp"
#include "dynamap/pdr.hpp"
#include "dynamap/simulator.hpp"
#include "support/test_util.hpp"

using namespace dynamap;

namespace {

constexpr double kPi = 3.14159265358979323846;

SimConfig noiseless() {
  SimConfig cfg;
  cfg.rss_noise_sigma = 0.0;
  cfg.accel_noise_sigma = 0.0;
  return cfg;
}

std::vector<Vec2> square_loop(double side) {
  return {{0, 0}, {0, side}, {side, side}, {side, 0}, {0, 0}};
}

}  // namespace

TEST_CASE("gen_walk places one pose per step along the polyline") {
  SimConfig cfg;
  Track square = gen_walk(square_loop(7.5), cfg);
  CHECK(square.size() == 41);  // 30 m perimeter / 0.75 m + start
  CHECK(square.entries.back().step_index == 40);

  std::vector<Vec2> pair{{0, 0}, {0, 3}};
  Track line = gen_walk(pair, cfg);
  REQUIRE(line.size() == 5);
  CHECK(line.entries[1].t == doctest::Approx(0.5));
  CHECK(line.entries[4].t == doctest::Approx(2.0));
  CHECK(line.entries[4].pose.y == doctest::Approx(3.0));
  for (const TrackEntry& e : line.entries) CHECK(e.pose.heading == doctest::Approx(0.0));
}

TEST_CASE("gen_walk heading is the segment bearing") {
  SimConfig cfg;
  std::vector<Vec2> east{{0, 0}, {6, 0}};
  Track track = gen_walk(east, cfg);
  for (const TrackEntry& e : track.entries) {
    CHECK(e.pose.heading == doctest::Approx(kPi / 2.0));
  }
}

TEST_CASE("synth_imu round-trips step count and heading through the detector") {
  SimConfig cfg = noiseless();
  PdrConfig pdr_cfg;

  std::vector<Vec2> line{{0, 0}, {0, 9}};  // 12 steps
  Track track = gen_walk(line, cfg);
  auto samples = synth_imu(track, cfg);
  auto steps = detect_steps(samples, pdr_cfg);
  CHECK(steps.size() == 12);

  // single right-angle turn: integrated gyro equals the heading change
  std::vector<Vec2> corner{{0, 0}, {0, 3}, {3, 3}};
  Track turn_track = gen_walk(corner, cfg);
  auto turn_samples = synth_imu(turn_track, cfg);
  double integrated = 0.0;
  for (std::size_t i = 1; i < turn_samples.size(); ++i) {
    integrated += turn_samples[i - 1].gyro.z() * (turn_samples[i].t - turn_samples[i - 1].t);
  }
  CHECK(integrated == doctest::Approx(kPi / 2.0).epsilon(1e-6));
}

TEST_CASE("synth_imu of a stationary track is quiet") {
  SimConfig cfg = noiseless();
  Track still;
  still.entries.push_back({0.0, {1, 1, 0}, 0});
  auto samples = synth_imu(still, cfg);
  PdrConfig pdr_cfg;
  for (const ImuSample& s : samples) {
    CHECK(std::abs(accel_norm(s, pdr_cfg.g)) < 1e-12);
  }
  CHECK(detect_steps(samples, pdr_cfg).empty());
}

TEST_CASE("run_pdr reproduces the generated walk at zero noise") {
  SimConfig cfg = noiseless();
  PdrConfig pdr_cfg;

  std::vector<Vec2> line{{0, 0}, {0, 9}};
  Track truth = gen_walk(line, cfg);
  Track recovered = run_pdr(synth_imu(truth, cfg), truth.entries.front().pose, pdr_cfg);
  REQUIRE(recovered.size() == truth.size());
  CHECK(std::abs(recovered.entries.back().pose.x - truth.entries.back().pose.x) < 1e-6);
  CHECK(std::abs(recovered.entries.back().pose.y - truth.entries.back().pose.y) < 1e-6);

  Track square_truth = gen_walk(square_loop(7.5), cfg);
  Track square_rec =
      run_pdr(synth_imu(square_truth, cfg), square_truth.entries.front().pose, pdr_cfg);
  REQUIRE(square_rec.size() == square_truth.size());
  double end_err = distance(square_rec.entries.back().pose.position(),
                            square_truth.entries.back().pose.position());
  CHECK(end_err < 1e-3);
}

TEST_CASE("synth_rss follows the log-distance model") {
  SimConfig cfg = noiseless();
  Floorplan plan = testutil::open_floorplan();
  ApSpec ap;
  ap.mac = testutil::make_mac(1);
  ap.position = {0, 0};

  WifiScan at_ref = synth_rss({1, 0}, std::vector<ApSpec>{ap}, plan, cfg, 0.0);
  CHECK(*at_ref.readings.get(ap.mac) == doctest::Approx(ap.tx_ref_dbm));

  ApSpec ap2 = ap;
  ap2.path_loss_exponent = 2.0;
  WifiScan near = synth_rss({2, 0}, std::vector<ApSpec>{ap2}, plan, cfg, 0.0);
  WifiScan far = synth_rss({4, 0}, std::vector<ApSpec>{ap2}, plan, cfg, 0.0);
  CHECK(*near.readings.get(ap.mac) - *far.readings.get(ap.mac) ==
        doctest::Approx(6.020599913279624).epsilon(1e-12));
}

TEST_CASE("synth_rss subtracts wall loss per crossing") {
  SimConfig cfg = noiseless();
  Floorplan plan;
  plan.bounds = {-10, -10, 10, 10};
  plan.walls.push_back({{2, -5}, {2, 5}});
  ApSpec ap;
  ap.mac = testutil::make_mac(1);
  ap.position = {0, 0};

  WifiScan blocked = synth_rss({4, 0}, std::vector<ApSpec>{ap}, plan, cfg, 0.0);
  Floorplan open = testutil::open_floorplan();
  WifiScan clear = synth_rss({4, 0}, std::vector<ApSpec>{ap}, open, cfg, 0.0);
  CHECK(*clear.readings.get(ap.mac) - *blocked.readings.get(ap.mac) == doctest::Approx(5.0));
}

TEST_CASE("synth_rss omits readings below the sensitivity floor") {
  SimConfig cfg = noiseless();
  Floorplan plan = testutil::open_floorplan();
  ApSpec ap;
  ap.mac = testutil::make_mac(1);
  ap.position = {0, 0};
  ap.tx_ref_dbm = -80.0;
  // -80 - 25*log10(d) < -100 for d > ~6.3 m
  WifiScan gone = synth_rss({1000, 0}, std::vector<ApSpec>{ap}, plan, cfg, 0.0);
  CHECK(gone.readings.empty());
}

TEST_CASE("synth_rss is monotone in distance at zero noise") {
  SimConfig cfg = noiseless();
  Floorplan plan = testutil::open_floorplan();
  ApSpec ap;
  ap.mac = testutil::make_mac(1);
  ap.position = {0, 0};
  double prev = 1e9;
  for (double d = 1.0; d < 60.0; d += 0.5) {
    WifiScan scan = synth_rss({d, 0}, std::vector<ApSpec>{ap}, plan, cfg, 0.0);
    if (auto rss = scan.readings.get(ap.mac)) {
      CHECK(*rss <= prev);
      prev = *rss;
    }
  }
}

TEST_CASE("synth_rss is deterministic in (seed, t, position)") {
  SimConfig cfg;
  cfg.seed = 77;
  Floorplan plan = testutil::open_floorplan();
  std::vector<ApSpec> aps;
  for (int i = 0; i < 5; ++i) {
    ApSpec ap;
    ap.mac = testutil::make_mac(i);
    ap.position = {double(i * 3), 0.0};
    aps.push_back(ap);
  }
  WifiScan a = synth_rss({5, 5}, aps, plan, cfg, 10.0);
  WifiScan b = synth_rss({5, 5}, aps, plan, cfg, 10.0);
  CHECK(a.readings == b.readings);

  WifiScan other_t = synth_rss({5, 5}, aps, plan, cfg, 15.0);
  CHECK(a.readings != other_t.readings);
}

TEST_CASE("gen_static_map covers the bounds in a grid") {
  SimConfig cfg = noiseless();
  Floorplan plan;
  plan.bounds = {0, 0, 10, 4};
  std::vector<ApSpec> aps;
  ApSpec ap;
  ap.mac = testutil::make_mac(9);
  ap.position = {5, 2};
  aps.push_back(ap);

  RadioMap map = gen_static_map(plan, aps, 2.0, cfg);
  CHECK(map.points.size() == 18);  // 6 x 3
  CHECK(map.provenance == Provenance::static_survey);

  // zero noise: every fingerprint equals the deterministic path-loss value
  for (const ReferencePoint& rp : map.points) {
    WifiScan direct = synth_rss(rp.position, aps, plan, cfg, 0.0);
    REQUIRE(rp.fingerprint.size() == direct.readings.size());
    for (const auto& [mac, rss] : rp.fingerprint.readings()) {
      CHECK(rss == doctest::Approx(*direct.readings.get(mac)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gen_static_map averaging concentrates around the deterministic value") {
  SimConfig cfg;
  cfg.seed = 5;
  cfg.rss_noise_sigma = 2.0;
  Floorplan plan;
  plan.bounds = {0, 0, 10, 4};
  std::vector<ApSpec> aps;
  for (int i = 0; i < 4; ++i) {
    ApSpec ap;
    ap.mac = testutil::make_mac(i);
    ap.position = {2.5 * i, 2.0};
    aps.push_back(ap);
  }
  SimConfig clean = cfg;
  clean.rss_noise_sigma = 0.0;

  RadioMap map = gen_static_map(plan, aps, 2.0, cfg);
  int total = 0;
  int within = 0;
  double bound = 3.0 * cfg.rss_noise_sigma / std::sqrt(20.0);
  for (const ReferencePoint& rp : map.points) {
    WifiScan expected = synth_rss(rp.position, aps, plan, clean, 0.0);
    for (const auto& [mac, rss] : rp.fingerprint.readings()) {
      if (auto mean = expected.readings.get(mac)) {
        ++total;
        if (std::abs(rss - *mean) <= bound) ++within;
      }
    }
  }
  REQUIRE(total > 40);
  // 3-sigma bound on the mean of 20 draws: expect ~99.7% within
  CHECK(static_cast<double>(within) / total >= 0.95);
}

TEST_CASE("scans_along_track samples every scan interval") {
  SimConfig cfg = noiseless();
  Floorplan plan = testutil::open_floorplan();
  std::vector<ApSpec> aps;
  ApSpec ap;
  ap.mac = testutil::make_mac(0);
  ap.position = {0, 0};
  aps.push_back(ap);

  std::vector<Vec2> line{{0, 0}, {0, 15}};  // 20 steps, 10 s at 2 Hz
  Track track = gen_walk(line, cfg);
  auto scans = scans_along_track(track, aps, plan, cfg);
  REQUIRE(scans.size() == 3);  // t = 0, 5, 10
  CHECK(scans[0].t == 0.0);
  CHECK(scans[1].t == 5.0);
  CHECK(scans[2].t == 10.0);
}
