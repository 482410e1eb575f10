#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynamap/types.hpp"

namespace dynamap {

struct MergeConfig {
  double d_min = 2.0;           // m, below this merge unconditionally
  double d_max = 4.0;           // m, at or above this never merge
  double rss_threshold = 4.0;   // dB, similarity gate inside [d_min, d_max)
  double sensitivity_floor = kSensitivityFloorDbm;
};

enum class MergeOutcome {
  merge_by_distance,
  merge_by_similarity,
  keep_separate_far,
  keep_separate_dissimilar,
};

struct MergeDecision {
  MergeOutcome outcome = MergeOutcome::keep_separate_far;
  double distance = 0.0;
  // Defined only when d_min <= distance < d_max and the fingerprints share APs.
  std::optional<double> rss_dif;
};

const char* to_string(MergeOutcome outcome);

// One raw reference point per scan, placed at the track pose with the greatest
// time <= the scan time (the post-step pose when a step coincides with the
// scan). Scans before the first entry clamp to it and add a warning line.
RadioMap assign_reference_points(const Track& track, std::span<const WifiScan> scans,
                                 int floor = 0, std::vector<std::string>* warnings = nullptr);

// Mean absolute RSS difference over the APs present in both fingerprints;
// nullopt when they share none.
std::optional<double> rss_dif(const Fingerprint& a, const Fingerprint& b);

MergeDecision should_merge(const ReferencePoint& a, const ReferencePoint& b,
                           const MergeConfig& cfg);

// Midpoint position, per-AP mean over the union of MACs (sensitivity floor
// fills a missing side), summed sample counts, id = min of the two.
ReferencePoint merge_pair(const ReferencePoint& a, const ReferencePoint& b,
                          const MergeConfig& cfg);

// Greedy fixed-point merge: repeatedly merge the mergeable same-floor pair
// with the smallest distance (ties toward the smallest id pair) until no pair
// merges. decisions_log, when given, receives one line per evaluated pair
// with distance < d_max per round.
RadioMap merge_radio_map(RadioMap map, const MergeConfig& cfg,
                         std::vector<std::string>* decisions_log = nullptr);

// assign_reference_points followed by merge_radio_map; provenance = dynamic.
RadioMap build_dynamic_map(const Track& track, std::span<const WifiScan> scans,
                           const MergeConfig& cfg, int floor = 0,
                           std::vector<std::string>* decisions_log = nullptr);

}  // namespace dynamap
