#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "astro/guidance.hpp"
#include "astro/rigid_body.hpp"

namespace astro {

class ControllerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ControlGains {
  double kx = 0.0;      // N/m
  double kv = 0.0;      // N s/m
  double kR = 0.0;      // N m
  double kOmega = 0.0;  // N m s
};

struct ErrorState {
  double psi = 0.0;                                      // attitude error function
  Eigen::Vector3d e_R = Eigen::Vector3d::Zero();         // body frame
  Eigen::Vector3d e_Omega = Eigen::Vector3d::Zero();     // body frame
  Eigen::Vector3d e_x = Eigen::Vector3d::Zero();         // inertial, m
  Eigen::Vector3d e_v = Eigen::Vector3d::Zero();         // inertial, m/s
};

/// Psi = 1/2 tr(I - Rd'R) and e_R = 1/2 vee(Rd'R - R'Rd).
/// Throws on inputs away from SO(3) (orthonormality error above 1e-6).
std::pair<double, Eigen::Vector3d> attitude_error(const Eigen::Matrix3d& r,
                                                  const Eigen::Matrix3d& r_d);

/// e_Omega = Omega - R'Rd Omega_d
Eigen::Vector3d angular_velocity_error(const Eigen::Matrix3d& r,
                                       const Eigen::Vector3d& omega,
                                       const Eigen::Matrix3d& r_d,
                                       const Eigen::Vector3d& omega_d);

ErrorState compute_errors(const SpacecraftState& state, const TrajectoryCommand& cmd);

/// Geometric attitude tracking moment, body frame. m1/m2 are the per-mass
/// gravitational moments being cancelled.
Eigen::Vector3d control_moment(const SpacecraftState& state,
                               const TrajectoryCommand& cmd,
                               const ControlGains& gains,
                               const DumbbellParams& params,
                               const Eigen::Vector3d& gravity_moment1,
                               const Eigen::Vector3d& gravity_moment2);

/// Translational tracking force, inertial frame. f1/f2 are the per-mass
/// gravitational forces being cancelled.
Eigen::Vector3d control_force(const SpacecraftState& state,
                              const TrajectoryCommand& cmd,
                              const ControlGains& gains,
                              const DumbbellParams& params,
                              const Eigen::Vector3d& gravity_force1,
                              const Eigen::Vector3d& gravity_force2);

/// Second-order pole placement: kx = m wn^2, kv = 2 zeta wn m per axis, and
/// the rotational pair scaled by the largest inertia eigenvalue.
ControlGains select_gains(const DumbbellParams& params, double zeta,
                          double wn_translation, double wn_attitude);

}  // namespace astro
