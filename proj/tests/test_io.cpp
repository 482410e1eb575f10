#include <random>

#include "doctest.h"
#include "dynamap/errors.hpp"
#include "dynamap/io.hpp"
#include "support/test_util.hpp"

using namespace dynamap;

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double d = v(rng);
    std::string s = format_double(d);
    CHECK(std::stod(s) == d);
  }
  CHECK(format_double(0.75) == "0.75");
  CHECK(format_double(-100.0) == "-100");
}

TEST_CASE("radio map JSON round-trips values and bytes") {
  std::mt19937_64 rng(101);
  RadioMap map = testutil::random_radio_map(rng, 12, 6);
  map.points[3].floor = 2;
  map.points[3].sample_count = 4;

  std::string text = serialize_radio_map(map);
  RadioMap parsed = parse_radio_map(text);

  REQUIRE(parsed.points.size() == map.points.size());
  CHECK(parsed.provenance == map.provenance);
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    CHECK(parsed.points[i].id == map.points[i].id);
    CHECK(parsed.points[i].position == map.points[i].position);
    CHECK(parsed.points[i].floor == map.points[i].floor);
    CHECK(parsed.points[i].sample_count == map.points[i].sample_count);
    CHECK(parsed.points[i].fingerprint == map.points[i].fingerprint);  // bit-exact RSS
  }
  CHECK(serialize_radio_map(parsed) == text);
}

TEST_CASE("radio map parse errors") {
  CHECK_THROWS_AS(parse_radio_map("not json"), InputError);
  CHECK_THROWS_AS(parse_radio_map(R"({"provenance":"weird","points":[]})"), InputError);
  CHECK_THROWS_AS(parse_radio_map(R"({"points":[]})"), InputError);
  // duplicate ids
  CHECK_THROWS_AS(parse_radio_map(R"({"provenance":"static","points":[
    {"id":1,"x":0,"y":0,"floor":0,"sample_count":1,"fingerprint":{}},
    {"id":1,"x":1,"y":0,"floor":0,"sample_count":1,"fingerprint":{}}]})"),
                  InputError);
}

TEST_CASE("radio map input clamps RSS below the sensitivity floor") {
  RadioMap map = parse_radio_map(R"({"provenance":"static","points":[
    {"id":0,"x":0,"y":0,"floor":0,"sample_count":1,"fingerprint":{"aa:bb:cc:dd:ee:ff":-123.0}}]})");
  CHECK(*map.points[0].fingerprint.get(MacId("aa:bb:cc:dd:ee:ff")) == -100.0);
}

TEST_CASE("floorplan JSON round-trip and validation") {
  Floorplan plan;
  plan.bounds = {0, 0, 50, 20};
  plan.walls.push_back({{0, 8}, {20, 8}});
  plan.walls.push_back({{10, 0}, {10, 8}});

  std::string text = serialize_floorplan(plan);
  Floorplan parsed = parse_floorplan(text);
  CHECK(parsed.walls.size() == 2);
  CHECK(parsed.bounds.xmax == 50.0);
  CHECK(serialize_floorplan(parsed) == text);

  CHECK_THROWS_AS(parse_floorplan(R"({"bounds":{"xmin":0,"ymin":0,"xmax":10,"ymax":10},
    "walls":[[0,0,20,0]]})"),
                  InputError);  // endpoint outside bounds
  CHECK_THROWS_AS(parse_floorplan(R"({"bounds":{"xmin":0,"ymin":0,"xmax":10,"ymax":10},
    "walls":[[1,1,1,1]]})"),
                  InputError);  // zero length
  CHECK_THROWS_AS(parse_floorplan(R"({"bounds":{"xmin":5,"ymin":0,"xmax":0,"ymax":10},"walls":[]})"),
                  InputError);  // inverted bounds
}

TEST_CASE("scan CSV groups rows by timestamp and round-trips") {
  std::string text =
      "t,mac,rss\n"
      "0,aa:bb:cc:dd:ee:01,-50.5\n"
      "0,aa:bb:cc:dd:ee:02,-61\n"
      "5,aa:bb:cc:dd:ee:01,-52.25\n";
  std::vector<WifiScan> scans = parse_scans_csv(text);
  REQUIRE(scans.size() == 2);
  CHECK(scans[0].readings.size() == 2);
  CHECK(scans[1].readings.size() == 1);
  CHECK(*scans[0].readings.get(MacId("aa:bb:cc:dd:ee:02")) == -61.0);
  CHECK(serialize_scans_csv(scans) == text);
}

TEST_CASE("scan CSV error paths") {
  CHECK_THROWS_AS(parse_scans_csv("wrong,header\n"), InputError);
  CHECK_THROWS_AS(parse_scans_csv("t,mac,rss\n5,aa:bb:cc:dd:ee:01,-50\n0,aa:bb:cc:dd:ee:01,-50\n"),
                  InputError);  // decreasing scan time
  CHECK_THROWS_AS(parse_scans_csv("t,mac,rss\n0,aa:bb:cc:dd:ee:01,-50\n0,AA:BB:CC:DD:EE:01,-51\n"),
                  InputError);  // duplicate MAC within a scan
  CHECK_THROWS_AS(parse_scans_csv("t,mac,rss\n-1,aa:bb:cc:dd:ee:01,-50\n"), InputError);
  CHECK_THROWS_AS(parse_scans_csv("t,mac,rss\n0,aa:bb:cc:dd:ee:01\n"), InputError);
  CHECK_THROWS_AS(parse_scans_csv("t,mac,rss\n0,aa:bb:cc:dd:ee:01,nope\n"), InputError);
}

TEST_CASE("scan CSV clamps RSS below the sensitivity floor") {
  std::vector<WifiScan> scans = parse_scans_csv("t,mac,rss\n0,aa:bb:cc:dd:ee:01,-140\n");
  CHECK(*scans[0].readings.get(MacId("aa:bb:cc:dd:ee:01")) == -100.0);
}

TEST_CASE("IMU CSV round-trip and monotonicity") {
  std::vector<ImuSample> samples;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v(-10.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    ImuSample s;
    s.t = i * 0.01;
    s.accel = {v(rng), v(rng), v(rng)};
    s.gyro = {v(rng), v(rng), v(rng)};
    samples.push_back(s);
  }
  std::string text = serialize_imu_csv(samples);
  std::vector<ImuSample> parsed = parse_imu_csv(text);
  REQUIRE(parsed.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(parsed[i].t == samples[i].t);
    CHECK((parsed[i].accel.array() == samples[i].accel.array()).all());
    CHECK((parsed[i].gyro.array() == samples[i].gyro.array()).all());
  }
  CHECK(serialize_imu_csv(parsed) == text);

  CHECK_THROWS_AS(parse_imu_csv("t,ax,ay,az,wx,wy,wz\n1,0,0,0,0,0,0\n1,0,0,0,0,0,0\n"),
                  InputError);
}

TEST_CASE("track CSV round-trip and ordering checks") {
  Track track;
  track.entries.push_back({0.0, {0, 0, 0}, 0});
  track.entries.push_back({0.5, {0, 0.75, 0}, 1});
  track.entries.push_back({1.0, {0, 1.5, 0.125}, 2});

  std::string text = serialize_track_csv(track);
  Track parsed = parse_track_csv(text);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed.entries[2].pose.heading == 0.125);
  CHECK(serialize_track_csv(parsed) == text);

  CHECK_THROWS_AS(parse_track_csv("t,step,x,y,heading\n1,1,0,0,0\n0.5,2,0,0,0\n"), InputError);
  CHECK_THROWS_AS(parse_track_csv("t,step,x,y,heading\n1,2,0,0,0\n2,1,0,0,0\n"), InputError);
}

TEST_CASE("tool config parses partial sections") {
  ToolConfig cfg = parse_tool_config(R"({"pf":{"n_particles":500},"merge":{"d_min":1.5}})");
  CHECK(cfg.pf.n_particles == 500);
  CHECK(cfg.pf.step_sigma == 0.1);      // untouched default
  CHECK(cfg.merge.d_min == 1.5);
  CHECK(cfg.merge.d_max == 4.0);
  CHECK_THROWS_AS(parse_tool_config(R"({"merge":{"d_min":5.0}})"), InputError);  // d_min >= d_max
  CHECK_THROWS_AS(parse_tool_config(R"({"pf":{"n_particles":2}})"), InputError);
}
