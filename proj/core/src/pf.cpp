#include "dynamap/pf.hpp"

#include <cmath>

#include "dynamap/errors.hpp"
#include "dynamap/geometry.hpp"

namespace dynamap {

namespace {

double gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

}  // namespace

ParticleSet pf_init(const Pose& start, const PfConfig& cfg, std::uint64_t seed) {
  ParticleSet set;
  set.seed = seed;
  set.rng.seed(seed);
  set.particles.reserve(static_cast<std::size_t>(cfg.n_particles));
  double w = 1.0 / cfg.n_particles;
  for (int i = 0; i < cfg.n_particles; ++i) {
    Pose p = start;
    p.x += gaussian(set.rng, cfg.step_sigma);
    p.y += gaussian(set.rng, cfg.step_sigma);
    set.particles.push_back({p, w});
  }
  return set;
}

ParticleSet pf_predict(ParticleSet set, const StepEvent& step, double heading,
                       const PfConfig& cfg) {
  for (Particle& p : set.particles) {
    double length = step.length + gaussian(set.rng, cfg.step_sigma);
    double psi = wrap_angle(heading + gaussian(set.rng, cfg.heading_sigma));
    p.pose = {p.pose.x + length * std::sin(psi), p.pose.y + length * std::cos(psi), psi};
  }
  return set;
}

ParticleSet pf_update_weights(ParticleSet set, std::span<const Vec2> prev_positions,
                              const Floorplan& plan) {
  if (prev_positions.size() != set.particles.size()) {
    throw InputError("one previous position per particle is required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < set.particles.size(); ++i) {
    Particle& p = set.particles[i];
    Vec2 pos = p.pose.position();
    bool blocked = !plan.bounds.contains(pos) || crosses_wall(plan, prev_positions[i], pos);
    if (blocked) p.weight = 0.0;
    sum += p.weight;
  }
  if (sum <= 0.0) throw ParticleFilterCollapse();
  for (Particle& p : set.particles) p.weight /= sum;
  return set;
}

double effective_particles(const ParticleSet& set) {
  double sum_sq = 0.0;
  for (const Particle& p : set.particles) sum_sq += p.weight * p.weight;
  return 1.0 / sum_sq;
}

ParticleSet resample(ParticleSet set) {
  const std::size_t n = set.particles.size();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u0 = uniform(set.rng);

  std::vector<Particle> out;
  out.reserve(n);
  std::size_t i = 0;
  double cumulative = set.particles[0].weight;
  double w = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    double u = (u0 + static_cast<double>(j)) / static_cast<double>(n);
    while (cumulative < u && i + 1 < n) {
      ++i;
      cumulative += set.particles[i].weight;
    }
    out.push_back({set.particles[i].pose, w});
  }
  set.particles = std::move(out);
  return set;
}

Pose pf_estimate(const ParticleSet& set) {
  double x = 0.0, y = 0.0, sin_sum = 0.0, cos_sum = 0.0;
  for (const Particle& p : set.particles) {
    x += p.weight * p.pose.x;
    y += p.weight * p.pose.y;
    sin_sum += p.weight * std::sin(p.pose.heading);
    cos_sum += p.weight * std::cos(p.pose.heading);
  }
  return {x, y, std::atan2(sin_sum, cos_sum)};
}

Track run_pf_pdr(std::span<const ImuSample> samples, const Pose& start, const Floorplan& plan,
                 const PdrConfig& pdr_cfg, const PfConfig& pf_cfg, std::uint64_t seed,
                 const PfStepCallback& on_step) {
  Track track;
  if (samples.empty()) {
    track.entries.push_back({0.0, start, 0});
    return track;
  }
  track.entries.push_back({samples[0].t, start, 0});

  std::vector<StepEvent> steps = detect_steps(samples, pdr_cfg);
  std::size_t next = 0;
  Attitude att;
  ParticleSet set = pf_init(start, pf_cfg, seed);
  std::vector<Vec2> prev(set.particles.size());

  for (std::size_t i = 1; i < samples.size(); ++i) {
    att = dcm_update(att, samples[i - 1].gyro, samples[i].t - samples[i - 1].t);
    while (next < steps.size() && steps[next].t <= samples[i].t) {
      const StepEvent& step = steps[next];
      double heading = wrap_angle(start.heading + yaw_from_dcm(att));

      for (std::size_t p = 0; p < set.particles.size(); ++p) {
        prev[p] = set.particles[p].pose.position();
      }
      set = pf_predict(std::move(set), step, heading, pf_cfg);
      try {
        set = pf_update_weights(std::move(set), prev, plan);
      } catch (const ParticleFilterCollapse&) {
        throw ParticleFilterCollapse(step.index);
      }

      PfStepStats stats;
      stats.step_index = step.index;
      stats.t = step.t;
      stats.ess = effective_particles(set);
      stats.weight_sum = 0.0;
      for (const Particle& p : set.particles) stats.weight_sum += p.weight;
      stats.resampled = stats.ess < pf_cfg.resample_fraction * pf_cfg.n_particles;
      if (stats.resampled) set = resample(std::move(set));

      Pose estimate = pf_estimate(set);
      track.entries.push_back({step.t, estimate, step.index});
      if (on_step) on_step(stats);
      ++next;
    }
  }
  return track;
}

}  // namespace dynamap
