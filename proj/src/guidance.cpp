#include "astro/guidance.hpp"

#include <cmath>

namespace astro {

namespace {

const Eigen::Vector3d kSpinAxis(0.0, 0.0, 1.0);

/// Asteroid-frame anchor direction of the phase-2 radial profile.
Eigen::Vector3d phase2_anchor(const GuidanceConfig& config,
                              const AsteroidModel& asteroid) {
  if (config.mode == GuidanceConfig::Mode::PaperLiteral) {
    return Eigen::Vector3d::UnitX();  // asteroid f1 axis
  }
  // inertial radial direction reached at the end of phase 1, pulled back
  const double w = M_PI / (2.0 * config.switch_time);
  const Eigen::Vector3d end_dir(std::sin(w * config.switch_time),
                                -std::cos(w * config.switch_time), 0.0);
  return asteroid.attitude_at(config.switch_time).transpose() * end_dir;
}

}  // namespace

PositionCommand desired_position(double t, const GuidanceConfig& config,
                                 const AsteroidModel& asteroid) {
  if (config.switch_time <= 0.0) throw GuidanceError("switch time must be positive");
  PositionCommand cmd;
  if (t <= config.switch_time) {
    const double w = M_PI / (2.0 * config.switch_time);
    const double r0 = config.initial_radius;
    cmd.position = r0 * Eigen::Vector3d(std::sin(w * t), -std::cos(w * t), 0.0);
    cmd.velocity = r0 * w * Eigen::Vector3d(std::cos(w * t), std::sin(w * t), 0.0);
    cmd.acceleration = -w * w * cmd.position;
    cmd.phase = 1;
    return cmd;
  }
  const Eigen::Vector3d dir = asteroid.attitude_at(t) * phase2_anchor(config, asteroid);
  const double rho = config.initial_radius + config.descent_rate * (t - config.switch_time);
  const Eigen::Vector3d spin = asteroid.spin_rate * kSpinAxis;
  cmd.position = rho * dir;
  cmd.velocity = config.descent_rate * dir + rho * spin.cross(dir);
  cmd.acceleration = 2.0 * config.descent_rate * spin.cross(dir) +
                     rho * spin.cross(spin.cross(dir));
  cmd.phase = 2;
  return cmd;
}

Eigen::Matrix3d nadir_attitude(const Eigen::Vector3d& desired_position,
                               double alignment_tol) {
  const double r = desired_position.norm();
  if (r <= 0.0) throw GuidanceError("nadir attitude undefined at the origin");
  const Eigen::Vector3d b1 = -desired_position / r;
  const Eigen::Vector3d f3 = kSpinAxis;
  if (std::abs(b1.dot(f3)) > 1.0 - alignment_tol) {
    throw GuidanceError("nadir attitude singular: command aligned with the spin axis");
  }
  const Eigen::Vector3d b3 = (f3 - f3.dot(b1) * b1).normalized();
  const Eigen::Vector3d b2 = b3.cross(b1);
  Eigen::Matrix3d rd;
  rd.col(0) = b1;
  rd.col(1) = b2;
  rd.col(2) = b3;
  return rd;
}

AttitudeCommand desired_attitude(double t, const GuidanceConfig& config,
                                 const AsteroidModel& asteroid) {
  const auto rd_at = [&](double tau) {
    return nadir_attitude(desired_position(tau, config, asteroid).position,
                          config.alignment_tol);
  };
  const double h = config.attitude_fd_step;
  const auto omega_at = [&](double tau) {
    const Eigen::Matrix3d rd = rd_at(tau);
    const Eigen::Matrix3d rd_dot = (rd_at(tau + h) - rd_at(tau - h)) / (2.0 * h);
    return vee_skew_part<double>(rd.transpose() * rd_dot);
  };
  // The command path has a kink at the phase switch; differencing across it
  // would turn the rate jump into an O(1/h) acceleration spike. Keep the
  // whole stencil on the side of the switch that t belongs to.
  const double td = config.switch_time;
  double ts = t;
  if (t <= td && t > td - 2.0 * h) ts = td - 2.0 * h;
  if (t > td && t < td + 2.0 * h) ts = td + 2.0 * h;
  AttitudeCommand cmd;
  cmd.attitude = rd_at(t);
  cmd.angular_velocity = omega_at(ts);
  cmd.angular_acceleration = (omega_at(ts + h) - omega_at(ts - h)) / (2.0 * h);
  return cmd;
}

TrajectoryCommand command_at(double t, const GuidanceConfig& config,
                             const AsteroidModel& asteroid) {
  const PositionCommand pos = desired_position(t, config, asteroid);
  const AttitudeCommand att = desired_attitude(t, config, asteroid);
  TrajectoryCommand cmd;
  cmd.position = pos.position;
  cmd.velocity = pos.velocity;
  cmd.acceleration = pos.acceleration;
  cmd.phase = pos.phase;
  cmd.attitude = att.attitude;
  cmd.angular_velocity = att.angular_velocity;
  cmd.angular_acceleration = att.angular_acceleration;
  return cmd;
}

}  // namespace astro
