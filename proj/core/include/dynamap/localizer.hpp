#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dynamap/types.hpp"

namespace dynamap {

// Guards the exact-match singularity in the inverse-distance weight.
inline constexpr double kWeightEpsilon = 1e-6;

enum class LocalizerAlgo { nn, knn, wknn, bayes };

struct RankedPoint {
  int rp_id = 0;
  double distance = 0.0;  // dB-space Euclidean distance
  double weight = 0.0;    // 1 / (distance + kWeightEpsilon)
};

struct LocalizerConfig {
  LocalizerAlgo algorithm = LocalizerAlgo::knn;
  int k = 3;
  double missing_fill = kSensitivityFloorDbm;  // dBm substituted for an undetected AP
  double bayes_sigma = 4.0;                    // dB, per-AP Gaussian likelihood width
};

struct PositionEstimate {
  Vec2 position;
  int floor = 0;
  std::vector<RankedPoint> contributors;
};

const char* to_string(LocalizerAlgo algo);
LocalizerAlgo localizer_algo_from_string(const std::string& name);

// Euclidean distance in dB space over the union of MACs; readings missing on
// one side are replaced by `fill`. Two empty fingerprints have distance 0.
double euclidean_distance(const Fingerprint& a, const Fingerprint& b, double fill);

// One entry per reference point, ascending by distance, ties by ascending id.
std::vector<RankedPoint> rank_reference_points(const Fingerprint& query, const RadioMap& map,
                                               const LocalizerConfig& cfg);

PositionEstimate estimate_nn(const Fingerprint& query, const RadioMap& map,
                             const LocalizerConfig& cfg);

// Unweighted centroid of the k nearest reference points.
PositionEstimate estimate_knn(const Fingerprint& query, const RadioMap& map,
                              const LocalizerConfig& cfg);

// Inverse-distance weighted centroid of the k nearest reference points.
PositionEstimate estimate_wknn(const Fingerprint& query, const RadioMap& map,
                               const LocalizerConfig& cfg);

// Posterior probability per reference point under independent per-AP Gaussian
// likelihoods (log-space) and a uniform prior; probabilities sum to 1.
std::vector<std::pair<int, double>> bayes_posterior(const Fingerprint& query,
                                                    const RadioMap& map,
                                                    const LocalizerConfig& cfg);

// Position of the maximum-posterior reference point; ties toward smaller id.
PositionEstimate estimate_bayes(const Fingerprint& query, const RadioMap& map,
                                const LocalizerConfig& cfg);

// Dispatch on cfg.algorithm.
PositionEstimate localize(const Fingerprint& query, const RadioMap& map,
                          const LocalizerConfig& cfg);

}  // namespace dynamap
