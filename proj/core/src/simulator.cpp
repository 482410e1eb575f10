#include "dynamap/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "dynamap/errors.hpp"
#include "dynamap/geometry.hpp"

namespace dynamap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSwingAmplitude = 3.0;  // m/s^2 on the accel z channel

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

double gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

double bearing(Vec2 from, Vec2 to) { return std::atan2(to.x - from.x, to.y - from.y); }

}  // namespace

Track gen_walk(std::span<const Vec2> waypoints, const SimConfig& cfg) {
  if (waypoints.size() < 2) throw InputError("a walk needs at least two waypoints");

  std::vector<double> cum(waypoints.size(), 0.0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    double len = distance(waypoints[i - 1], waypoints[i]);
    if (len <= 1e-12) throw InputError("consecutive waypoints must be distinct");
    cum[i] = cum[i - 1] + len;
  }
  double total = cum.back();
  int n_steps = static_cast<int>(std::floor(total / cfg.step_length + 1e-9));

  Track track;
  track.entries.reserve(static_cast<std::size_t>(n_steps) + 1);
  track.entries.push_back({0.0, {waypoints[0].x, waypoints[0].y, bearing(waypoints[0], waypoints[1])}, 0});

  std::size_t seg = 0;
  for (int k = 1; k <= n_steps; ++k) {
    double s = std::min(k * cfg.step_length, total);
    while (seg + 2 < waypoints.size() && cum[seg + 1] < s - 1e-9) ++seg;
    Vec2 a = waypoints[seg];
    Vec2 b = waypoints[seg + 1];
    double f = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
    Vec2 pos = a + f * (b - a);
    track.entries.push_back({k / cfg.step_frequency, {pos.x, pos.y, bearing(a, b)}, k});
  }
  return track;
}

std::vector<ImuSample> synth_imu(const Track& track, const SimConfig& cfg) {
  if (track.empty()) throw InputError("cannot synthesize IMU data for an empty track");

  const double t0 = track.entries.front().t;
  const double t_last = track.entries.back().t;
  const double step_dt = 1.0 / cfg.step_frequency;
  const double t_end = t_last + 0.25 * step_dt;
  const int n = static_cast<int>(std::floor((t_end - t0) * cfg.imu_rate + 1e-9)) + 1;
  const bool walking = track.size() >= 2;

  // Gyro z per sample: bias everywhere plus one rectangular pulse per heading
  // change, centered in the inter-entry interval so it never overlaps the
  // step's zero crossing.
  std::vector<double> gyro_z(static_cast<std::size_t>(n), cfg.gyro_bias);
  for (std::size_t k = 0; k + 1 < track.entries.size(); ++k) {
    double dpsi = wrap_angle(track.entries[k + 1].pose.heading - track.entries[k].pose.heading);
    if (std::abs(dpsi) < 1e-12) continue;
    double interval = track.entries[k + 1].t - track.entries[k].t;
    int n_pulse = std::max(1, static_cast<int>(std::llround(0.2 * interval * cfg.imu_rate)));
    double pulse_start = track.entries[k].t + 0.5 * (interval - n_pulse / cfg.imu_rate);
    int i0 = static_cast<int>(std::ceil((pulse_start - t0) * cfg.imu_rate - 1e-9));
    double rate = dpsi * cfg.imu_rate / n_pulse;
    for (int i = i0; i < i0 + n_pulse && i < n; ++i) {
      if (i >= 0) gyro_z[static_cast<std::size_t>(i)] += rate;
    }
  }

  std::mt19937_64 rng(mix({cfg.seed, bits(t0), 0x696D75ULL /* "imu" */}));
  std::vector<ImuSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = t0 + i / cfg.imu_rate;
    double swing = walking ? -kSwingAmplitude * std::sin(2.0 * kPi * cfg.step_frequency * (t - t0))
                           : 0.0;
    ImuSample s;
    s.t = t;
    s.accel = {gaussian(rng, cfg.accel_noise_sigma), gaussian(rng, cfg.accel_noise_sigma),
               9.81 + swing + gaussian(rng, cfg.accel_noise_sigma)};
    s.gyro = {0.0, 0.0, gyro_z[static_cast<std::size_t>(i)]};
    samples.push_back(s);
  }
  return samples;
}

WifiScan synth_rss(Vec2 position, std::span<const ApSpec> aps, const Floorplan& plan,
                   const SimConfig& cfg, double t) {
  std::mt19937_64 rng(mix({cfg.seed, bits(t), bits(position.x), bits(position.y)}));
  WifiScan scan;
  scan.t = t;
  for (const ApSpec& ap : aps) {
    double d = std::max(distance(position, ap.position), 1.0);
    int walls = count_wall_crossings(plan, ap.position, position);
    double rss = ap.tx_ref_dbm - 10.0 * ap.path_loss_exponent * std::log10(d) -
                 ap.wall_loss_db * walls + gaussian(rng, cfg.rss_noise_sigma);
    // Below-sensitivity readings are omitted, not clamped, so asymmetric AP
    // detection occurs naturally.
    if (rss >= kSensitivityFloorDbm) scan.readings.set(ap.mac, rss);
  }
  return scan;
}

Fingerprint averaged_fingerprint(Vec2 position, std::span<const ApSpec> aps,
                                 const Floorplan& plan, const SimConfig& cfg, int samples) {
  std::map<MacId, std::pair<double, int>> acc;  // mac -> (sum, count)
  for (int j = 0; j < samples; ++j) {
    WifiScan scan = synth_rss(position, aps, plan, cfg, j * cfg.scan_interval);
    for (const auto& [mac, rss] : scan.readings.readings()) {
      auto& [sum, count] = acc[mac];
      sum += rss;
      ++count;
    }
  }
  Fingerprint fp;
  for (const auto& [mac, sc] : acc) fp.set(mac, sc.first / sc.second);
  return fp;
}

RadioMap gen_static_map(const Floorplan& plan, std::span<const ApSpec> aps, double spacing,
                        const SimConfig& cfg) {
  if (spacing <= 0.0) throw InputError("grid spacing must be positive");
  constexpr int kSamplesPerPoint = 20;

  int nx = static_cast<int>(std::floor(plan.bounds.width() / spacing + 1e-9)) + 1;
  int ny = static_cast<int>(std::floor(plan.bounds.height() / spacing + 1e-9)) + 1;

  RadioMap map;
  map.provenance = Provenance::static_survey;
  map.points.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  int id = 0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Vec2 pos{plan.bounds.xmin + ix * spacing, plan.bounds.ymin + iy * spacing};
      ReferencePoint rp;
      rp.id = id++;
      rp.position = pos;
      rp.floor = 0;
      rp.fingerprint = averaged_fingerprint(pos, aps, plan, cfg, kSamplesPerPoint);
      rp.sample_count = kSamplesPerPoint;
      map.points.push_back(std::move(rp));
    }
  }
  return map;
}

std::vector<WifiScan> scans_along_track(const Track& track, std::span<const ApSpec> aps,
                                        const Floorplan& plan, const SimConfig& cfg) {
  if (track.empty()) throw InputError("cannot scan along an empty track");
  std::vector<WifiScan> scans;
  const double t0 = track.entries.front().t;
  const double t_last = track.entries.back().t;
  std::size_t idx = 0;
  for (int k = 0;; ++k) {
    double t = t0 + k * cfg.scan_interval;
    if (t > t_last + 1e-9) break;
    while (idx + 1 < track.entries.size() && track.entries[idx + 1].t <= t) ++idx;
    Vec2 pos;
    if (idx + 1 >= track.entries.size()) {
      pos = track.entries.back().pose.position();
    } else {
      const TrackEntry& a = track.entries[idx];
      const TrackEntry& b = track.entries[idx + 1];
      double f = (t - a.t) / (b.t - a.t);
      pos = a.pose.position() + f * (b.pose.position() - a.pose.position());
    }
    scans.push_back(synth_rss(pos, aps, plan, cfg, t));
  }
  return scans;
}

}  // namespace dynamap
