#include "dynamap/mapbuilder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "dynamap/errors.hpp"
#include "dynamap/io.hpp"

namespace dynamap {

const char* to_string(MergeOutcome outcome) {
  switch (outcome) {
    case MergeOutcome::merge_by_distance: return "merge_by_distance";
    case MergeOutcome::merge_by_similarity: return "merge_by_similarity";
    case MergeOutcome::keep_separate_far: return "keep_separate_far";
    case MergeOutcome::keep_separate_dissimilar: return "keep_separate_dissimilar";
  }
  return "unknown";
}

RadioMap assign_reference_points(const Track& track, std::span<const WifiScan> scans,
                                 int floor, std::vector<std::string>* warnings) {
  if (track.empty()) throw InputError("cannot assign reference points to an empty track");

  RadioMap map;
  map.provenance = Provenance::dynamic_walk;
  map.points.reserve(scans.size());

  for (std::size_t k = 0; k < scans.size(); ++k) {
    const WifiScan& scan = scans[k];
    // Greatest entry time <= scan time; a step landing exactly on the scan
    // time contributes its post-step pose.
    auto it = std::upper_bound(track.entries.begin(), track.entries.end(), scan.t,
                               [](double t, const TrackEntry& e) { return t < e.t; });
    if (it == track.entries.begin()) {
      if (warnings) {
        warnings->push_back("scan at t=" + format_double(scan.t) +
                            " precedes the track start; assigned to the first entry");
      }
    } else {
      --it;
    }
    ReferencePoint rp;
    rp.id = static_cast<int>(k);
    rp.position = it->pose.position();
    rp.floor = floor;
    rp.fingerprint = scan.readings;
    rp.sample_count = 1;
    map.points.push_back(std::move(rp));
  }
  return map;
}

std::optional<double> rss_dif(const Fingerprint& a, const Fingerprint& b) {
  double sum = 0.0;
  int n = 0;
  for (const auto& [mac, rss_a] : a.readings()) {
    if (auto rss_b = b.get(mac)) {
      sum += std::abs(rss_a - *rss_b);
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

MergeDecision should_merge(const ReferencePoint& a, const ReferencePoint& b,
                           const MergeConfig& cfg) {
  MergeDecision dec;
  dec.distance = distance(a.position, b.position);
  if (a.floor != b.floor) {
    dec.outcome = MergeOutcome::keep_separate_far;
    return dec;
  }
  if (dec.distance < cfg.d_min) {
    dec.outcome = MergeOutcome::merge_by_distance;
    return dec;
  }
  if (dec.distance >= cfg.d_max) {
    dec.outcome = MergeOutcome::keep_separate_far;
    return dec;
  }
  dec.rss_dif = rss_dif(a.fingerprint, b.fingerprint);
  dec.outcome = (dec.rss_dif && *dec.rss_dif <= cfg.rss_threshold)
                    ? MergeOutcome::merge_by_similarity
                    : MergeOutcome::keep_separate_dissimilar;
  return dec;
}

ReferencePoint merge_pair(const ReferencePoint& a, const ReferencePoint& b,
                          const MergeConfig& cfg) {
  ReferencePoint merged;
  merged.id = std::min(a.id, b.id);
  merged.position = {(a.position.x + b.position.x) / 2.0, (a.position.y + b.position.y) / 2.0};
  merged.floor = a.floor;
  merged.sample_count = a.sample_count + b.sample_count;

  for (const auto& [mac, rss_a] : a.fingerprint.readings()) {
    double other = b.fingerprint.get(mac).value_or(cfg.sensitivity_floor);
    merged.fingerprint.set(mac, (rss_a + other) / 2.0);
  }
  for (const auto& [mac, rss_b] : b.fingerprint.readings()) {
    if (!a.fingerprint.contains(mac)) {
      merged.fingerprint.set(mac, (rss_b + cfg.sensitivity_floor) / 2.0);
    }
  }
  return merged;
}

namespace {

std::string decision_line(const ReferencePoint& a, const ReferencePoint& b,
                          const MergeDecision& dec) {
  std::string line = "pair(" + std::to_string(a.id) + "," + std::to_string(b.id) + ")";
  line += " d=" + format_double(dec.distance);
  line += " rss_dif=";
  line += dec.rss_dif ? format_double(*dec.rss_dif) : "undefined";
  line += " outcome=";
  line += to_string(dec.outcome);
  return line;
}

bool is_merge(MergeOutcome outcome) {
  return outcome == MergeOutcome::merge_by_distance ||
         outcome == MergeOutcome::merge_by_similarity;
}

}  // namespace

RadioMap merge_radio_map(RadioMap map, const MergeConfig& cfg,
                         std::vector<std::string>* decisions_log) {
  if (!(cfg.d_min > 0.0 && cfg.d_min < cfg.d_max && cfg.rss_threshold > 0.0)) {
    throw InputError("merge config requires 0 < d_min < d_max and rss_threshold > 0");
  }

  auto& points = map.points;
  for (;;) {
    // Best = smallest distance, ties toward the smallest (min id, max id) pair.
    std::size_t best_i = 0, best_j = 0;
    auto best_key = std::make_tuple(std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<int>::max(),
                                    std::numeric_limits<int>::max());
    bool found = false;

    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (points[i].floor != points[j].floor) continue;
        double d = distance(points[i].position, points[j].position);
        if (d >= cfg.d_max) continue;
        MergeDecision dec = should_merge(points[i], points[j], cfg);
        if (decisions_log) decisions_log->push_back(decision_line(points[i], points[j], dec));
        if (!is_merge(dec.outcome)) continue;
        auto key = std::make_tuple(dec.distance, std::min(points[i].id, points[j].id),
                                   std::max(points[i].id, points[j].id));
        if (!found || key < best_key) {
          found = true;
          best_key = key;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (!found) break;

    ReferencePoint merged = merge_pair(points[best_i], points[best_j], cfg);
    points[best_i] = std::move(merged);
    points.erase(points.begin() + static_cast<std::ptrdiff_t>(best_j));
  }

  map.provenance = Provenance::dynamic_walk;
  return map;
}

RadioMap build_dynamic_map(const Track& track, std::span<const WifiScan> scans,
                           const MergeConfig& cfg, int floor,
                           std::vector<std::string>* decisions_log) {
  return merge_radio_map(assign_reference_points(track, scans, floor), cfg, decisions_log);
}

}  // namespace dynamap
