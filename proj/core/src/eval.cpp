#include "dynamap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynamap/errors.hpp"
#include "dynamap/io.hpp"

namespace dynamap {

double percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw EmptySample();
  if (sorted.size() == 1) return sorted[0];
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> track_errors(const Track& estimated, const Track& truth,
                                 std::vector<std::string>* diagnostics) {
  if (estimated.empty() || truth.empty()) throw EmptySample();

  std::vector<double> errors;
  errors.reserve(estimated.size());
  for (const TrackEntry& e : estimated.entries) {
    double t = e.t;
    if (t < truth.entries.front().t || t > truth.entries.back().t) {
      if (diagnostics) {
        diagnostics->push_back("estimate at t=" + format_double(t) +
                               " outside the truth span; clamped to the nearest endpoint");
      }
      t = std::clamp(t, truth.entries.front().t, truth.entries.back().t);
    }
    auto it = std::upper_bound(truth.entries.begin(), truth.entries.end(), t,
                               [](double v, const TrackEntry& te) { return v < te.t; });
    Vec2 pos;
    if (it == truth.entries.begin()) {
      pos = it->pose.position();
    } else if (it == truth.entries.end()) {
      pos = truth.entries.back().pose.position();
    } else {
      const TrackEntry& b = *it;
      const TrackEntry& a = *(it - 1);
      double f = (t - a.t) / (b.t - a.t);
      pos = a.pose.position() + f * (b.pose.position() - a.pose.position());
    }
    errors.push_back(distance(e.pose.position(), pos));
  }
  return errors;
}

ErrorStats error_stats(std::span<const double> errors) {
  if (errors.empty()) throw EmptySample();
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());

  ErrorStats stats;
  stats.count = static_cast<int>(sorted.size());
  stats.minimum = sorted.front();
  stats.maximum = sorted.back();
  stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  stats.median = percentile(sorted, 0.5);
  stats.p90 = percentile(sorted, 0.9);
  return stats;
}

CdfSeries error_cdf(std::span<const double> errors) {
  if (errors.empty()) throw EmptySample();
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());

  CdfSeries cdf;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.points.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

std::vector<KSweepRow> k_sweep(const RadioMap& map, std::span<const LocalizationQuery> queries,
                               std::span<const LocalizerAlgo> algos, std::span<const int> k_range,
                               const LocalizerConfig& base) {
  std::vector<KSweepRow> rows;
  for (LocalizerAlgo algo : algos) {
    for (int k : k_range) {
      LocalizerConfig cfg = base;
      cfg.algorithm = algo;
      cfg.k = k;
      std::vector<double> errors;
      errors.reserve(queries.size());
      for (const auto& [fingerprint, truth] : queries) {
        PositionEstimate est = localize(fingerprint, map, cfg);
        errors.push_back(distance(est.position, truth));
      }
      std::sort(errors.begin(), errors.end());
      rows.push_back({algo, k, percentile(errors, 0.5)});
    }
  }
  return rows;
}

ErrorStats compare_fingerprints(const RadioMap& dynamic_map,
                                std::span<const StaticReference> static_ref) {
  if (dynamic_map.points.empty()) throw NoReferencePoints();

  std::vector<double> diffs;
  for (const auto& [pos, fp] : static_ref) {
    const ReferencePoint* nearest = nullptr;
    double best = 0.0;
    for (const ReferencePoint& rp : dynamic_map.points) {
      double d = distance(pos, rp.position);
      if (!nearest || d < best || (d == best && rp.id < nearest->id)) {
        nearest = &rp;
        best = d;
      }
    }
    for (const auto& [mac, rss] : fp.readings()) {
      if (auto other = nearest->fingerprint.get(mac)) {
        diffs.push_back(std::abs(rss - *other));
      }
    }
  }
  if (diffs.empty()) throw EmptySample();
  return error_stats(diffs);
}

}  // namespace dynamap
