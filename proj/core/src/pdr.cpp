#include "dynamap/pdr.hpp"

#include <cmath>
#include <limits>

namespace dynamap {

namespace {

Eigen::Matrix3d orthonormalized(const Eigen::Matrix3d& C) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    R = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return R;
}

}  // namespace

double accel_norm(const ImuSample& sample, double g) { return sample.accel.norm() - g; }

std::vector<StepEvent> detect_steps(std::span<const ImuSample> samples, const PdrConfig& cfg) {
  std::vector<StepEvent> steps;
  if (samples.empty()) return steps;

  double prev = accel_norm(samples[0], cfg.g);
  bool armed = prev > cfg.swing_threshold;  // swing seen since the last crossing
  double last_step_t = -std::numeric_limits<double>::infinity();
  int index = 1;

  for (std::size_t i = 1; i < samples.size(); ++i) {
    double cur = accel_norm(samples[i], cfg.g);
    if (cur > cfg.swing_threshold) armed = true;
    if (armed && prev > 0.0 && cur <= 0.0) {
      if (samples[i].t - last_step_t >= cfg.min_step_interval) {
        steps.push_back({samples[i].t, index++, cfg.step_length});
        last_step_t = samples[i].t;
      }
      armed = false;  // a rejected crossing still consumes the swing
    }
    prev = cur;
  }
  return steps;
}

Attitude dcm_update(const Attitude& att, const Eigen::Vector3d& gyro, double dt) {
  Eigen::Vector3d theta = gyro * dt;
  double sigma = theta.norm();

  Eigen::Matrix3d B;
  B << 0.0, -theta.z(), theta.y(),
       theta.z(), 0.0, -theta.x(),
       -theta.y(), theta.x(), 0.0;

  double a, b;
  if (sigma < 1e-8) {
    a = 1.0;
    b = 0.5;
  } else {
    a = std::sin(sigma) / sigma;
    b = (1.0 - std::cos(sigma)) / (sigma * sigma);
  }

  Attitude out;
  out.C = att.C * (Eigen::Matrix3d::Identity() + a * B + b * (B * B));
  out.updates_since_renorm = att.updates_since_renorm + 1;
  if (out.updates_since_renorm >= kDcmRenormInterval || out.ortho_error() > kDcmOrthoTol) {
    out.C = orthonormalized(out.C);
    out.updates_since_renorm = 0;
  }
  return out;
}

double yaw_from_dcm(const Attitude& att) {
  return wrap_angle(std::atan2(att.C(1, 0), att.C(0, 0)));
}

Pose pdr_step(const Pose& pose, const StepEvent& step, double heading) {
  double psi = wrap_angle(heading);
  return {pose.x + step.length * std::sin(psi), pose.y + step.length * std::cos(psi), psi};
}

Track run_pdr(std::span<const ImuSample> samples, const Pose& start, const PdrConfig& cfg) {
  Track track;
  if (samples.empty()) {
    track.entries.push_back({0.0, start, 0});
    return track;
  }
  track.entries.push_back({samples[0].t, start, 0});

  std::vector<StepEvent> steps = detect_steps(samples, cfg);
  std::size_t next = 0;
  Attitude att;
  Pose pose = start;

  for (std::size_t i = 1; i < samples.size(); ++i) {
    // Zero-order hold: the earlier sample's rate covers the interval ending here.
    att = dcm_update(att, samples[i - 1].gyro, samples[i].t - samples[i - 1].t);
    while (next < steps.size() && steps[next].t <= samples[i].t) {
      double heading = wrap_angle(start.heading + yaw_from_dcm(att));
      pose = pdr_step(pose, steps[next], heading);
      track.entries.push_back({steps[next].t, pose, steps[next].index});
      ++next;
    }
  }
  return track;
}

}  // namespace dynamap
