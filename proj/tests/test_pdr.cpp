#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dynamap/pdr.hpp"

using namespace dynamap;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix3d z_rotation(double angle) {
  Eigen::Matrix3d r;
  r << std::cos(angle), -std::sin(angle), 0.0,
       std::sin(angle), std::cos(angle), 0.0,
       0.0, 0.0, 1.0;
  return r;
}

// Samples of a pure vertical sinusoid on top of gravity.
std::vector<ImuSample> sinusoid_samples(double amplitude, double freq_hz, double duration_s,
                                        double rate_hz) {
  std::vector<ImuSample> samples;
  int n = static_cast<int>(duration_s * rate_hz);
  for (int i = 0; i < n; ++i) {
    double t = i / rate_hz;
    ImuSample s;
    s.t = t;
    s.accel = {0.0, 0.0, 9.81 + amplitude * std::sin(2.0 * kPi * freq_hz * t)};
    samples.push_back(s);
  }
  return samples;
}

// Independent count of thresholded downward zero crossings of the analytic signal.
int analytic_crossing_count(double amplitude, double freq_hz, double duration_s, double rate_hz,
                            double threshold, double min_interval) {
  int n = static_cast<int>(duration_s * rate_hz);
  bool armed = false;
  double last = -1e18;
  int count = 0;
  double prev = amplitude * std::sin(0.0);
  for (int i = 1; i < n; ++i) {
    double t = i / rate_hz;
    double cur = amplitude * std::sin(2.0 * kPi * freq_hz * t);
    if (cur > threshold) armed = true;
    if (armed && prev > 0.0 && cur <= 0.0) {
      if (t - last >= min_interval) {
        ++count;
        last = t;
      }
      armed = false;
    }
    prev = cur;
  }
  return count;
}

}  // namespace

TEST_CASE("accel_norm") {
  ImuSample stationary;
  stationary.accel = {0, 0, 9.81};
  CHECK(accel_norm(stationary, 9.81) == doctest::Approx(0.0));

  ImuSample lifted;
  lifted.accel = {0, 0, 11.81};
  CHECK(accel_norm(lifted, 9.81) == doctest::Approx(2.0));

  ImuSample sideways;
  sideways.accel = {3, 4, 0};
  CHECK(accel_norm(sideways, 9.81) == doctest::Approx(-4.81));
}

TEST_CASE("detect_steps finds no steps in a constant signal") {
  PdrConfig cfg;
  std::vector<ImuSample> samples;
  for (int i = 0; i < 1000; ++i) {
    ImuSample s;
    s.t = i * 0.01;
    s.accel = {0, 0, 9.81};
    samples.push_back(s);
  }
  CHECK(detect_steps(samples, cfg).empty());
  CHECK(detect_steps(std::vector<ImuSample>{}, cfg).empty());
}

TEST_CASE("detect_steps counts the 2 Hz sinusoid's gait cycles") {
  PdrConfig cfg;
  auto samples = sinusoid_samples(3.0, 2.0, 5.0, 100.0);
  auto steps = detect_steps(samples, cfg);
  int expected = analytic_crossing_count(3.0, 2.0, 5.0, 100.0, cfg.swing_threshold,
                                         cfg.min_step_interval);
  CHECK(expected == 10);
  CHECK(static_cast<int>(steps.size()) == expected);
  for (const StepEvent& s : steps) CHECK(s.length == cfg.step_length);
}

TEST_CASE("detect_steps ignores sub-threshold swings") {
  PdrConfig cfg;
  auto samples = sinusoid_samples(0.5, 2.0, 5.0, 100.0);
  CHECK(detect_steps(samples, cfg).empty());
}

TEST_CASE("step count is invariant under uniform time shift") {
  PdrConfig cfg;
  auto samples = sinusoid_samples(3.0, 2.0, 5.0, 100.0);
  auto shifted = samples;
  for (ImuSample& s : shifted) s.t += 1234.5;
  CHECK(detect_steps(samples, cfg).size() == detect_steps(shifted, cfg).size());
}

TEST_CASE("dcm_update leaves attitude unchanged at zero rate") {
  Attitude att;
  att.C = z_rotation(0.3);
  Attitude out = dcm_update(att, {0, 0, 0}, 0.01);
  CHECK((out.C.array() == att.C.array()).all());
}

TEST_CASE("dcm_update matches the closed-form z rotation") {
  Attitude att;
  Attitude out = dcm_update(att, {0, 0, kPi / 2.0}, 1.0);
  CHECK((out.C - z_rotation(kPi / 2.0)).norm() < 1e-9);
  CHECK(yaw_from_dcm(out) == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("dcm_update with opposite rates returns to identity") {
  Attitude att;
  Eigen::Vector3d rate{0.4, -1.1, 2.0};
  Attitude fwd = dcm_update(att, rate, 0.25);
  Attitude back = dcm_update(fwd, -rate, 0.25);
  CHECK((back.C - Eigen::Matrix3d::Identity()).norm() < 1e-9);
}

TEST_CASE("dcm_update composes along a fixed axis") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> v(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d rate{v(rng), v(rng), v(rng)};
    double dt = 0.05;
    Attitude twice = dcm_update(dcm_update(Attitude{}, rate, dt), rate, dt);
    Attitude once = dcm_update(Attitude{}, rate, 2.0 * dt);
    CHECK((twice.C - once.C).norm() < 1e-9);
  }
}

TEST_CASE("attitude stays orthonormal over many random updates") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> axis(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 5.0);
  Attitude att;
  for (int i = 0; i < 100000; ++i) {
    Eigen::Vector3d dir{axis(rng), axis(rng), axis(rng)};
    if (dir.norm() < 1e-6) dir = {1, 0, 0};
    dir.normalize();
    att = dcm_update(att, mag(rng) * dir, 0.01);
  }
  CHECK(att.ortho_error() <= 1e-6);
  CHECK(att.C.determinant() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("yaw_from_dcm") {
  Attitude identity;
  CHECK(yaw_from_dcm(identity) == 0.0);

  Attitude rotated;
  rotated.C = z_rotation(0.7);
  CHECK(yaw_from_dcm(rotated) == doctest::Approx(0.7).epsilon(1e-12));

  Attitude half_turn;
  half_turn.C = z_rotation(kPi);
  CHECK(yaw_from_dcm(half_turn) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("pdr_step follows the sin/cos axis convention") {
  StepEvent step{0.0, 1, 0.75};
  Pose north = pdr_step({0, 0, 0}, step, 0.0);
  CHECK(north.x == doctest::Approx(0.0));
  CHECK(north.y == doctest::Approx(0.75));

  Pose east = pdr_step({0, 0, 0}, step, kPi / 2.0);
  CHECK(east.x == doctest::Approx(0.75));
  CHECK(east.y == doctest::Approx(0.0).epsilon(1e-12));

  Pose pose{0, 0, 0};
  for (int i = 0; i < 4; ++i) pose = pdr_step(pose, step, 0.0);
  CHECK(pose.y == doctest::Approx(3.0));
}

TEST_CASE("pdr_step moves exactly one step length with wrapped heading") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  StepEvent step{0.0, 1, 0.75};
  for (int i = 0; i < 500; ++i) {
    double heading = angle(rng);
    Pose out = pdr_step({1.0, -2.0, 0.0}, step, heading);
    double moved = std::hypot(out.x - 1.0, out.y + 2.0);
    CHECK(moved == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(out.heading > -kPi);
    CHECK(out.heading <= kPi);
  }
}

TEST_CASE("run_pdr with no steps returns only the start entry") {
  PdrConfig cfg;
  Pose start{2.0, 3.0, 0.5};
  std::vector<ImuSample> still;
  for (int i = 0; i < 200; ++i) {
    ImuSample s;
    s.t = i * 0.01;
    s.accel = {0, 0, 9.81};
    still.push_back(s);
  }
  Track track = run_pdr(still, start, cfg);
  REQUIRE(track.size() == 1);
  CHECK(track.entries[0].pose.x == start.x);
  CHECK(track.entries[0].step_index == 0);

  Track empty = run_pdr(std::vector<ImuSample>{}, start, cfg);
  CHECK(empty.size() == 1);
}

TEST_CASE("run_pdr walks straight under a steady gait signal") {
  PdrConfig cfg;
  auto samples = sinusoid_samples(3.0, 2.0, 5.25, 100.0);  // 10 full cycles plus margin
  Track track = run_pdr(samples, {0, 0, 0}, cfg);
  REQUIRE(track.size() == 11);  // start + 10 steps
  const Pose& end = track.entries.back().pose;
  CHECK(end.x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(end.y == doctest::Approx(7.5).epsilon(1e-9));
}
