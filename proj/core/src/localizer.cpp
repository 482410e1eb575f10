#include "dynamap/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynamap/errors.hpp"

namespace dynamap {

const char* to_string(LocalizerAlgo algo) {
  switch (algo) {
    case LocalizerAlgo::nn: return "nn";
    case LocalizerAlgo::knn: return "knn";
    case LocalizerAlgo::wknn: return "wknn";
    case LocalizerAlgo::bayes: return "bayes";
  }
  return "unknown";
}

LocalizerAlgo localizer_algo_from_string(const std::string& name) {
  if (name == "nn") return LocalizerAlgo::nn;
  if (name == "knn") return LocalizerAlgo::knn;
  if (name == "wknn") return LocalizerAlgo::wknn;
  if (name == "bayes") return LocalizerAlgo::bayes;
  throw InputError("unknown localizer algorithm: " + name);
}

double euclidean_distance(const Fingerprint& a, const Fingerprint& b, double fill) {
  double sum_sq = 0.0;
  auto ia = a.readings().begin();
  auto ib = b.readings().begin();
  while (ia != a.readings().end() || ib != b.readings().end()) {
    double va, vb;
    if (ib == b.readings().end() || (ia != a.readings().end() && ia->first < ib->first)) {
      va = ia->second;
      vb = fill;
      ++ia;
    } else if (ia == a.readings().end() || ib->first < ia->first) {
      va = fill;
      vb = ib->second;
      ++ib;
    } else {
      va = ia->second;
      vb = ib->second;
      ++ia;
      ++ib;
    }
    double d = va - vb;
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq);
}

std::vector<RankedPoint> rank_reference_points(const Fingerprint& query, const RadioMap& map,
                                               const LocalizerConfig& cfg) {
  if (map.points.empty()) throw NoReferencePoints();
  std::vector<RankedPoint> ranked;
  ranked.reserve(map.points.size());
  for (const ReferencePoint& rp : map.points) {
    double d = euclidean_distance(query, rp.fingerprint, cfg.missing_fill);
    ranked.push_back({rp.id, d, 1.0 / (d + kWeightEpsilon)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedPoint& a, const RankedPoint& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.rp_id < b.rp_id;
  });
  return ranked;
}

namespace {

const ReferencePoint& point_by_id(const RadioMap& map, int id) {
  for (const ReferencePoint& rp : map.points) {
    if (rp.id == id) return rp;
  }
  throw NoReferencePoints();
}

std::vector<RankedPoint> top_k(const Fingerprint& query, const RadioMap& map,
                               const LocalizerConfig& cfg, int k) {
  if (k < 1) throw InputError("k must be >= 1");
  if (k > static_cast<int>(map.points.size())) {
    throw InsufficientReferencePoints(k, static_cast<int>(map.points.size()));
  }
  std::vector<RankedPoint> ranked = rank_reference_points(query, map, cfg);
  ranked.resize(static_cast<std::size_t>(k));
  return ranked;
}

}  // namespace

PositionEstimate estimate_nn(const Fingerprint& query, const RadioMap& map,
                             const LocalizerConfig& cfg) {
  std::vector<RankedPoint> best = top_k(query, map, cfg, 1);
  const ReferencePoint& rp = point_by_id(map, best[0].rp_id);
  return {rp.position, rp.floor, std::move(best)};
}

PositionEstimate estimate_knn(const Fingerprint& query, const RadioMap& map,
                              const LocalizerConfig& cfg) {
  std::vector<RankedPoint> nearest = top_k(query, map, cfg, cfg.k);
  Vec2 centroid;
  for (const RankedPoint& r : nearest) {
    centroid = centroid + point_by_id(map, r.rp_id).position;
  }
  centroid = (1.0 / static_cast<double>(nearest.size())) * centroid;
  return {centroid, point_by_id(map, nearest[0].rp_id).floor, std::move(nearest)};
}

PositionEstimate estimate_wknn(const Fingerprint& query, const RadioMap& map,
                               const LocalizerConfig& cfg) {
  std::vector<RankedPoint> nearest = top_k(query, map, cfg, cfg.k);
  double weight_sum = 0.0;
  for (const RankedPoint& r : nearest) weight_sum += r.weight;
  // Accumulating normalized weights keeps k=1 bit-identical to the NN choice.
  Vec2 weighted;
  for (const RankedPoint& r : nearest) {
    weighted = weighted + (r.weight / weight_sum) * point_by_id(map, r.rp_id).position;
  }
  return {weighted, point_by_id(map, nearest[0].rp_id).floor, std::move(nearest)};
}

std::vector<std::pair<int, double>> bayes_posterior(const Fingerprint& query,
                                                    const RadioMap& map,
                                                    const LocalizerConfig& cfg) {
  if (map.points.empty()) throw NoReferencePoints();
  constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))
  const double sigma = cfg.bayes_sigma;
  const double log_norm = -std::log(sigma) - kLogSqrt2Pi;

  // Log-likelihood per RP over the union of query/RP MACs; the per-AP count
  // varies with the union, so the normalization terms do not cancel.
  std::vector<double> log_like;
  log_like.reserve(map.points.size());
  double max_ll = -std::numeric_limits<double>::infinity();
  for (const ReferencePoint& rp : map.points) {
    double ll = 0.0;
    auto iq = query.readings().begin();
    auto im = rp.fingerprint.readings().begin();
    while (iq != query.readings().end() || im != rp.fingerprint.readings().end()) {
      double vq, vm;
      if (im == rp.fingerprint.readings().end() ||
          (iq != query.readings().end() && iq->first < im->first)) {
        vq = iq->second;
        vm = cfg.missing_fill;
        ++iq;
      } else if (iq == query.readings().end() || im->first < iq->first) {
        vq = cfg.missing_fill;
        vm = im->second;
        ++im;
      } else {
        vq = iq->second;
        vm = im->second;
        ++iq;
        ++im;
      }
      double z = (vq - vm) / sigma;
      ll += log_norm - 0.5 * z * z;
    }
    log_like.push_back(ll);
    max_ll = std::max(max_ll, ll);
  }

  // Uniform prior cancels in the normalization.
  std::vector<std::pair<int, double>> posterior;
  posterior.reserve(map.points.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    double p = std::exp(log_like[i] - max_ll);
    posterior.emplace_back(map.points[i].id, p);
    sum += p;
  }
  for (auto& [id, p] : posterior) p /= sum;
  return posterior;
}

PositionEstimate estimate_bayes(const Fingerprint& query, const RadioMap& map,
                                const LocalizerConfig& cfg) {
  std::vector<std::pair<int, double>> posterior = bayes_posterior(query, map, cfg);
  int best_id = posterior[0].first;
  double best_p = posterior[0].second;
  for (const auto& [id, p] : posterior) {
    if (p > best_p || (p == best_p && id < best_id)) {
      best_p = p;
      best_id = id;
    }
  }
  const ReferencePoint& rp = point_by_id(map, best_id);
  double d = euclidean_distance(query, rp.fingerprint, cfg.missing_fill);
  return {rp.position, rp.floor, {{rp.id, d, 1.0 / (d + kWeightEpsilon)}}};
}

PositionEstimate localize(const Fingerprint& query, const RadioMap& map,
                          const LocalizerConfig& cfg) {
  switch (cfg.algorithm) {
    case LocalizerAlgo::nn: return estimate_nn(query, map, cfg);
    case LocalizerAlgo::knn: return estimate_knn(query, map, cfg);
    case LocalizerAlgo::wknn: return estimate_wknn(query, map, cfg);
    case LocalizerAlgo::bayes: return estimate_bayes(query, map, cfg);
  }
  throw InputError("invalid localizer algorithm");
}

}  // namespace dynamap
