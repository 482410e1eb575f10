#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynamap/localizer.hpp"
#include "dynamap/types.hpp"

namespace dynamap {

struct ErrorStats {
  double minimum = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double p90 = 0.0;
  double maximum = 0.0;
  int count = 0;
};

// Empirical CDF: one point per distinct error value, fractions strictly
// increasing and ending at exactly 1.
struct CdfSeries {
  std::vector<std::pair<double, double>> points;  // (error, cumulative fraction)
};

// Linear interpolation between closest ranks over a sorted sample, p in [0, 1].
double percentile(std::span<const double> sorted, double p);

// Per estimated entry: Euclidean distance to the truth position linearly
// interpolated at the same timestamp. Timestamps outside the truth span clamp
// to the nearest endpoint and add a diagnostics line.
std::vector<double> track_errors(const Track& estimated, const Track& truth,
                                 std::vector<std::string>* diagnostics = nullptr);

ErrorStats error_stats(std::span<const double> errors);

CdfSeries error_cdf(std::span<const double> errors);

struct KSweepRow {
  LocalizerAlgo algo = LocalizerAlgo::knn;
  int k = 1;
  double median_error = 0.0;  // m
};

using LocalizationQuery = std::pair<Fingerprint, Vec2>;  // (observed scan, truth position)

// Median localization error per (algorithm, k) over a shared query set.
std::vector<KSweepRow> k_sweep(const RadioMap& map, std::span<const LocalizationQuery> queries,
                               std::span<const LocalizerAlgo> algos, std::span<const int> k_range,
                               const LocalizerConfig& base);

using StaticReference = std::pair<Vec2, Fingerprint>;  // (surveyed position, fingerprint)

// Pairs each static reference with its nearest dynamic RP, pools the per-AP
// absolute RSS differences over shared APs, and summarizes them in dB.
ErrorStats compare_fingerprints(const RadioMap& dynamic_map,
                                std::span<const StaticReference> static_ref);

}  // namespace dynamap
