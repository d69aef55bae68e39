#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

#include "astro/gravity.hpp"
#include "astro/so3.hpp"

namespace astro {

class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dumbbell mass point crossed into the body; terminal simulation event.
class CollisionError : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

/// Rigid-body state on SE(3): inertial position/velocity, body-to-inertial
/// rotation, body-frame angular velocity.
struct SpacecraftState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();
  Eigen::Vector3d angular_velocity = Eigen::Vector3d::Zero();
  double time = 0.0;
};

/// Two spheres of radius sphere_radius at body-frame offsets rho1, rho2.
/// Offsets are measured from the center of mass: m1 rho1 + m2 rho2 = 0.
struct DumbbellParams {
  double m1 = 0.0;
  double m2 = 0.0;
  Eigen::Vector3d rho1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d rho2 = Eigen::Vector3d::Zero();
  double sphere_radius = 0.0;
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();

  double total_mass() const { return m1 + m2; }

  /// Equal-ish masses separated by `separation` along b1, COM at the origin.
  static DumbbellParams symmetric(double m1, double m2, double separation,
                                  double sphere_radius);
};

/// Inertia of two solid spheres about the dumbbell center of mass.
/// Throws when the result is singular (point masses on a line).
Eigen::Matrix3d inertia_from_dumbbell(double m1, double m2,
                                      const Eigen::Vector3d& rho1,
                                      const Eigen::Vector3d& rho2,
                                      double sphere_radius);

/// How the gravitational moment composes the asteroid-frame force with the
/// spacecraft attitude. BodyFrame pairs the body-frame arm with the force
/// mapped into the body frame; PaperLiteral keeps the arm in the asteroid
/// frame, reproducing the printed expression.
enum class MomentConvention { BodyFrame, PaperLiteral };

/// Uniformly rotating asteroid carrying a polyhedron gravity field. The spin
/// axis is the inertial e3 (= asteroid f3); R_A(0) = I.
struct AsteroidModel {
  GravityModel gravity;
  double spin_rate = 0.0;  // rad/s about e3

  AsteroidModel(GravityModel g, double omega) : gravity(std::move(g)), spin_rate(omega) {}

  /// Asteroid-frame -> inertial rotation at time t.
  Eigen::Matrix3d attitude_at(double t) const {
    return exp_so3<double>(Eigen::Vector3d(0.0, 0.0, spin_rate * t));
  }
};

struct WrenchInput {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // inertial frame, N
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // body frame, N m
};

/// Total gravity force/moment plus the per-mass forces the controller
/// feeds forward.
struct GravityWrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();    // inertial
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();   // body frame
  Eigen::Vector3d force1 = Eigen::Vector3d::Zero();   // inertial, mass 1
  Eigen::Vector3d force2 = Eigen::Vector3d::Zero();   // inertial, mass 2
  Eigen::Vector3d moment1 = Eigen::Vector3d::Zero();  // body frame, mass 1
  Eigen::Vector3d moment2 = Eigen::Vector3d::Zero();  // body frame, mass 2
};

/// Asteroid-frame positions of the two dumbbell masses, z_i = R_A^T (x + R rho_i).
std::pair<Eigen::Vector3d, Eigen::Vector3d> mass_positions(
    const SpacecraftState& state, const AsteroidModel& asteroid,
    const DumbbellParams& params);

/// Evaluates the field at both mass points. Throws CollisionError when either
/// point is not exterior.
GravityWrench gravity_wrench(const SpacecraftState& state,
                             const AsteroidModel& asteroid,
                             const DumbbellParams& params,
                             MomentConvention convention = MomentConvention::BodyFrame);

struct StateDerivative {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular_acceleration = Eigen::Vector3d::Zero();
};

/// Coupled translational/rotational equations of motion under the polyhedron
/// field and an applied control wrench.
StateDerivative eom(const SpacecraftState& state, const AsteroidModel& asteroid,
                    const DumbbellParams& params, const WrenchInput& wrench,
                    MomentConvention convention = MomentConvention::BodyFrame);

using DerivativeFn = std::function<StateDerivative(const SpacecraftState&)>;

/// One fixed step of a fourth-order Munthe-Kaas integrator: classical RK4 on
/// (x, v, Omega) with the attitude advanced multiplicatively through exp on
/// SO(3). Re-projects the rotation when orthonormality drifts past 1e-12.
SpacecraftState step(const SpacecraftState& state, const DerivativeFn& derivative,
                     double dt);

struct EnergyDiagnostics {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

/// E = 1/2 m |v|^2 + 1/2 Omega'J Omega - sum_i m_i U(z_i)
EnergyDiagnostics energy(const SpacecraftState& state, const AsteroidModel& asteroid,
                         const DumbbellParams& params);

/// Rotating-frame (Jacobi) energy E - omega_A e3 . L, conserved for a
/// uniformly rotating asteroid with no control input.
double jacobi_energy(const SpacecraftState& state, const AsteroidModel& asteroid,
                     const DumbbellParams& params);

}  // namespace astro
