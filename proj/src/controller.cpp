#include "astro/controller.hpp"

#include "astro/so3.hpp"

namespace astro {

std::pair<double, Eigen::Vector3d> attitude_error(const Eigen::Matrix3d& r,
                                                  const Eigen::Matrix3d& r_d) {
  if (orthonormality_error(r) > 1e-6 || orthonormality_error(r_d) > 1e-6) {
    throw ControllerError("attitude_error: input is not a rotation matrix");
  }
  const Eigen::Matrix3d rel = r_d.transpose() * r;
  const double psi = 0.5 * (Eigen::Matrix3d::Identity() - rel).trace();
  const Eigen::Vector3d e_r = vee_skew_part<double>(rel);  // 1/2 vee(Rd'R - R'Rd)
  return {psi, e_r};
}

Eigen::Vector3d angular_velocity_error(const Eigen::Matrix3d& r,
                                       const Eigen::Vector3d& omega,
                                       const Eigen::Matrix3d& r_d,
                                       const Eigen::Vector3d& omega_d) {
  return omega - r.transpose() * r_d * omega_d;
}

ErrorState compute_errors(const SpacecraftState& state, const TrajectoryCommand& cmd) {
  ErrorState e;
  std::tie(e.psi, e.e_R) = attitude_error(state.attitude, cmd.attitude);
  e.e_Omega = angular_velocity_error(state.attitude, state.angular_velocity,
                                     cmd.attitude, cmd.angular_velocity);
  e.e_x = state.position - cmd.position;
  e.e_v = state.velocity - cmd.velocity;
  return e;
}

Eigen::Vector3d control_moment(const SpacecraftState& state,
                               const TrajectoryCommand& cmd,
                               const ControlGains& gains,
                               const DumbbellParams& params,
                               const Eigen::Vector3d& gravity_moment1,
                               const Eigen::Vector3d& gravity_moment2) {
  const auto [psi, e_r] = attitude_error(state.attitude, cmd.attitude);
  (void)psi;
  const Eigen::Vector3d e_w = angular_velocity_error(
      state.attitude, state.angular_velocity, cmd.attitude, cmd.angular_velocity);
  const Eigen::Vector3d& omega = state.angular_velocity;
  const Eigen::Matrix3d rt_rd = state.attitude.transpose() * cmd.attitude;
  return -gains.kR * e_r - gains.kOmega * e_w + omega.cross(params.inertia * omega) -
         params.inertia * (hat(omega) * rt_rd * cmd.angular_velocity -
                           rt_rd * cmd.angular_acceleration) -
         gravity_moment1 - gravity_moment2;
}

Eigen::Vector3d control_force(const SpacecraftState& state,
                              const TrajectoryCommand& cmd,
                              const ControlGains& gains,
                              const DumbbellParams& params,
                              const Eigen::Vector3d& gravity_force1,
                              const Eigen::Vector3d& gravity_force2) {
  const Eigen::Vector3d e_x = state.position - cmd.position;
  const Eigen::Vector3d e_v = state.velocity - cmd.velocity;
  return -gains.kx * e_x - gains.kv * e_v + params.total_mass() * cmd.acceleration -
         gravity_force1 - gravity_force2;
}

ControlGains select_gains(const DumbbellParams& params, double zeta,
                          double wn_translation, double wn_attitude) {
  if (zeta <= 0.0 || wn_translation <= 0.0 || wn_attitude <= 0.0) {
    throw ControllerError("gain design specs must be positive");
  }
  const double m = params.total_mass();
  const double j_max =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(params.inertia).eigenvalues().maxCoeff();
  ControlGains g;
  g.kx = m * wn_translation * wn_translation;
  g.kv = 2.0 * zeta * wn_translation * m;
  g.kR = j_max * wn_attitude * wn_attitude;
  g.kOmega = 2.0 * zeta * wn_attitude * j_max;
  return g;
}

}  // namespace astro
