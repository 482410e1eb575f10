#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "dynamap/pdr.hpp"
#include "dynamap/types.hpp"

namespace dynamap {

struct Particle {
  Pose pose;
  double weight = 0.0;
};

struct PfConfig {
  int n_particles = 1000;
  double step_sigma = 0.1;         // m, step length noise
  double heading_sigma = 0.05;     // rad, per-step heading noise
  double resample_fraction = 0.2;  // resample when ESS < fraction * N
};

// Weighted position hypotheses plus the RNG state that drives them, so a run
// is a pure function of (inputs, seed).
struct ParticleSet {
  std::vector<Particle> particles;
  std::uint64_t seed = 0;
  std::mt19937_64 rng;
};

// N particles around the start pose (Gaussian position jitter, sigma =
// step_sigma), uniform weights.
ParticleSet pf_init(const Pose& start, const PfConfig& cfg, std::uint64_t seed);

// Bootstrap proposal: each particle advances one step with perturbed length
// and heading; weights unchanged.
ParticleSet pf_predict(ParticleSet set, const StepEvent& step, double heading,
                       const PfConfig& cfg);

// Binary map-matching likelihood: 0 if a particle's motion segment crosses a
// wall or its new position leaves the bounds, else 1. Weights renormalized.
// Throws ParticleFilterCollapse when every likelihood is zero.
ParticleSet pf_update_weights(ParticleSet set, std::span<const Vec2> prev_positions,
                              const Floorplan& plan);

// Effective sample size 1 / sum(w_i^2); expects normalized weights.
double effective_particles(const ParticleSet& set);

// Systematic (low-variance) resampling; N preserved, weights reset to 1/N.
ParticleSet resample(ParticleSet set);

// Posterior mean position and circular-mean heading.
Pose pf_estimate(const ParticleSet& set);

struct PfStepStats {
  int step_index = 0;
  double t = 0.0;
  double ess = 0.0;         // after the weight update, before any resampling
  double weight_sum = 0.0;  // after renormalization
  bool resampled = false;
};

using PfStepCallback = std::function<void(const PfStepStats&)>;

// Full map-matched dead reckoning: per detected step, predict -> wall-based
// weight update -> resample when ESS < resample_fraction * N -> emit the
// posterior mean as a track entry. Deterministic given the seed.
Track run_pf_pdr(std::span<const ImuSample> samples, const Pose& start, const Floorplan& plan,
                 const PdrConfig& pdr_cfg, const PfConfig& pf_cfg, std::uint64_t seed,
                 const PfStepCallback& on_step = {});

}  // namespace dynamap
