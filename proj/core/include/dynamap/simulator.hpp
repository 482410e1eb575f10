#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynamap/pdr.hpp"
#include "dynamap/types.hpp"

namespace dynamap {

// Log-distance path loss transmitter model.
struct ApSpec {
  MacId mac;
  Vec2 position;
  double tx_ref_dbm = -40.0;        // RSS at the 1 m reference distance
  double path_loss_exponent = 2.5;
  double wall_loss_db = 5.0;        // attenuation per crossed wall
};

struct SimConfig {
  double step_length = 0.75;      // m
  double step_frequency = 2.0;    // Hz
  double imu_rate = 100.0;        // Hz
  double scan_interval = 5.0;     // s
  double rss_noise_sigma = 2.0;   // dB
  double accel_noise_sigma = 0.05;  // m/s^2
  double gyro_bias = 0.0;         // rad/s, injected on the z channel
  std::uint64_t seed = 0;
};

// Ground-truth walk: one pose per step_length along the waypoint polyline,
// heading = bearing (atan2 of dx, dy) of the segment being walked, timestamps
// every 1/step_frequency. Entry 0 is the start pose at t = 0.
Track gen_walk(std::span<const Vec2> waypoints, const SimConfig& cfg);

// Inverse of the dead reckoning pipeline: a 3 m/s^2 sinusoid on the accel z
// channel whose downward zero crossings land on step times, and gyro z pulses
// mid-interval that integrate to the heading change between entries.
std::vector<ImuSample> synth_imu(const Track& track, const SimConfig& cfg);

// One scan: per AP, log-distance path loss minus wall attenuation plus
// Gaussian noise; readings below the sensitivity floor are omitted.
// Deterministic in (cfg.seed, t, position).
WifiScan synth_rss(Vec2 position, std::span<const ApSpec> aps, const Floorplan& plan,
                   const SimConfig& cfg, double t);

// Mean fingerprint over `samples` noisy scans at one position (APs averaged
// over the draws in which they were detected).
Fingerprint averaged_fingerprint(Vec2 position, std::span<const ApSpec> aps,
                                 const Floorplan& plan, const SimConfig& cfg,
                                 int samples);

// Survey-style map: grid RPs over the plan bounds (spacing m, boundary
// included), each fingerprint averaged from 20 noisy scans.
RadioMap gen_static_map(const Floorplan& plan, std::span<const ApSpec> aps, double spacing,
                        const SimConfig& cfg);

// Scans every scan_interval along the track (positions interpolated by time),
// starting at the first entry's time.
std::vector<WifiScan> scans_along_track(const Track& track, std::span<const ApSpec> aps,
                                        const Floorplan& plan, const SimConfig& cfg);

}  // namespace dynamap
