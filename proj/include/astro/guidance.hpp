#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "astro/rigid_body.hpp"

namespace astro {

class GuidanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-phase landing command: circular traverse on the sphere of radius
/// initial_radius for t <= switch_time, then a constant-rate radial profile
/// carried along with the rotating asteroid.
struct GuidanceConfig {
  double initial_radius = 2550.0;  // m
  double switch_time = 3600.0;     // s
  /// Signed asteroid-frame radial rate during phase 2 (negative = descent).
  double descent_rate = -2000.0 / 3600.0;  // m/s

  /// Continuous anchors phase 2 at the inertial radial direction reached at
  /// switch_time; PaperLiteral anchors at the asteroid f1 axis, which leaves
  /// a position step at the switch.
  enum class Mode { Continuous, PaperLiteral };
  Mode mode = Mode::Continuous;

  double attitude_fd_step = 1e-2;  // s, central-difference step for Omega_d
  double alignment_tol = 1e-6;     // rad, nadir singularity guard
};

struct PositionCommand {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
  int phase = 1;
};

/// Full command consumed by the controller at one time instant.
struct TrajectoryCommand {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();
  Eigen::Vector3d angular_velocity = Eigen::Vector3d::Zero();      // body frame
  Eigen::Vector3d angular_acceleration = Eigen::Vector3d::Zero();  // body frame
  int phase = 1;
};

PositionCommand desired_position(double t, const GuidanceConfig& config,
                                 const AsteroidModel& asteroid);

/// Nadir-pointing frame: b1 toward the body, b3 the spin-axis component
/// orthogonal to b1. Throws GuidanceError near the spin-axis singularity.
Eigen::Matrix3d nadir_attitude(const Eigen::Vector3d& desired_position,
                               double alignment_tol = 1e-6);

struct AttitudeCommand {
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();
  Eigen::Vector3d angular_velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular_acceleration = Eigen::Vector3d::Zero();
};

/// Attitude command with body rates from central differences of the nadir
/// frame along the position command.
AttitudeCommand desired_attitude(double t, const GuidanceConfig& config,
                                 const AsteroidModel& asteroid);

TrajectoryCommand command_at(double t, const GuidanceConfig& config,
                             const AsteroidModel& asteroid);

}  // namespace astro
