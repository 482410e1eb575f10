#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dynamap/types.hpp"

namespace dynamap {

inline constexpr double kDcmOrthoTol = 1e-6;
inline constexpr int kDcmRenormInterval = 100;

struct ImuSample {
  double t = 0.0;               // seconds
  Eigen::Vector3d accel{0, 0, 0};  // m/s^2, body frame
  Eigen::Vector3d gyro{0, 0, 0};   // rad/s, body frame
};

// Direction cosine matrix, body -> navigation. Kept orthonormal by periodic
// renormalization (Frobenius drift <= kDcmOrthoTol).
struct Attitude {
  Eigen::Matrix3d C = Eigen::Matrix3d::Identity();
  int updates_since_renorm = 0;

  double ortho_error() const {
    return (C * C.transpose() - Eigen::Matrix3d::Identity()).norm();
  }
};

struct StepEvent {
  double t = 0.0;
  int index = 0;
  double length = 0.0;  // m
};

struct PdrConfig {
  double g = 9.81;                // m/s^2
  double step_length = 0.75;      // m
  double swing_threshold = 1.0;   // m/s^2, minimum swing before a zero crossing counts
  double min_step_interval = 0.3; // s, debounce between detected steps
  double sample_rate = 100.0;     // Hz
};

// Gravity-compensated acceleration magnitude: |a| - g.
double accel_norm(const ImuSample& sample, double g);

// Zero-crossing step detector: a swing above +swing_threshold followed by a
// downward zero crossing emits one step, debounced by min_step_interval.
std::vector<StepEvent> detect_steps(std::span<const ImuSample> samples, const PdrConfig& cfg);

// Rodrigues propagation C * (I + sin(s)/s B + (1-cos(s))/s^2 B^2) with
// B = dt * [gyro]_x and s = |dt * gyro|; small-angle limits below s = 1e-8.
Attitude dcm_update(const Attitude& att, const Eigen::Vector3d& gyro, double dt);

// atan2(C21, C11), wrapped to (-pi, pi].
double yaw_from_dcm(const Attitude& att);

// One step of the position update: x += l sin(psi), y += l cos(psi).
Pose pdr_step(const Pose& pose, const StepEvent& step, double heading);

// Dead reckoning over a full IMU log. The track starts with the start pose at
// the first sample time; each detected step appends an entry at the step's
// zero-crossing time using the yaw integrated up to that instant (offset by the
// start pose's heading).
Track run_pdr(std::span<const ImuSample> samples, const Pose& start, const PdrConfig& cfg);

}  // namespace dynamap
