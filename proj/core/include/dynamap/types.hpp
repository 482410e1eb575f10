#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dynamap {

// Receiver sensitivity; readings below this are clamped on input and this value
// substitutes for an AP missing on one side of a comparison.
inline constexpr double kSensitivityFloorDbm = -100.0;

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double kPi = 3.14159265358979323846;
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Access-point identifier. Construction canonicalizes: hex digit groups with
// optional ':' or '-' separators become lowercase `aa:bb:cc:dd:ee:ff`; anything
// else is kept as an opaque lowercase key. Canonicalization is idempotent.
class MacId {
 public:
  MacId() = default;
  explicit MacId(std::string_view raw);

  const std::string& str() const { return id_; }
  auto operator<=>(const MacId&) const = default;

 private:
  std::string id_;
};

// Per-AP RSS readings in dBm at one location. Values below the sensitivity
// floor are clamped on insertion.
class Fingerprint {
 public:
  void set(const MacId& mac, double rss_dbm);
  std::optional<double> get(const MacId& mac) const;
  bool contains(const MacId& mac) const { return readings_.find(mac) != readings_.end(); }

  bool empty() const { return readings_.empty(); }
  std::size_t size() const { return readings_.size(); }
  const std::map<MacId, double>& readings() const { return readings_; }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

 private:
  std::map<MacId, double> readings_;
};

struct ReferencePoint {
  int id = 0;
  Vec2 position;
  int floor = 0;
  Fingerprint fingerprint;
  int sample_count = 1;
};

enum class Provenance { static_survey, dynamic_walk };

struct RadioMap {
  Provenance provenance = Provenance::static_survey;
  std::vector<ReferencePoint> points;
};

struct WifiScan {
  double t = 0.0;  // seconds, monotonic session clock
  Fingerprint readings;
};

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Bounds {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol && p.y <= ymax + tol;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

struct Floorplan {
  Bounds bounds;
  std::vector<Segment> walls;
};

// Heading follows the step-update convention: 0 = +y, pi/2 = +x, wrapped to (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Vec2 position() const { return {x, y}; }
};

struct TrackEntry {
  double t = 0.0;
  Pose pose;
  int step_index = 0;
};

struct Track {
  std::vector<TrackEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

}  // namespace dynamap
