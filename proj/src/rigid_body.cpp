#include "astro/rigid_body.hpp"

namespace astro {

DumbbellParams DumbbellParams::symmetric(double m1, double m2, double separation,
                                         double sphere_radius) {
  if (m1 <= 0.0 || m2 <= 0.0) throw DynamicsError("dumbbell masses must be positive");
  if (separation < 0.0) throw DynamicsError("separation must be non-negative");
  DumbbellParams p;
  p.m1 = m1;
  p.m2 = m2;
  // COM condition m1 rho1 + m2 rho2 = 0 along b1
  p.rho1 = Eigen::Vector3d(-separation * m2 / (m1 + m2), 0.0, 0.0);
  p.rho2 = Eigen::Vector3d(separation * m1 / (m1 + m2), 0.0, 0.0);
  p.sphere_radius = sphere_radius;
  p.inertia = inertia_from_dumbbell(m1, m2, p.rho1, p.rho2, sphere_radius);
  return p;
}

Eigen::Matrix3d inertia_from_dumbbell(double m1, double m2,
                                      const Eigen::Vector3d& rho1,
                                      const Eigen::Vector3d& rho2,
                                      double sphere_radius) {
  if (m1 <= 0.0 || m2 <= 0.0) throw DynamicsError("dumbbell masses must be positive");
  if (sphere_radius < 0.0) throw DynamicsError("sphere radius must be non-negative");
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  const double sphere_term = 0.4 * sphere_radius * sphere_radius;
  j += m1 * ((rho1.squaredNorm() + sphere_term) * Eigen::Matrix3d::Identity() -
             rho1 * rho1.transpose());
  j += m2 * ((rho2.squaredNorm() + sphere_term) * Eigen::Matrix3d::Identity() -
             rho2 * rho2.transpose());
  // point masses on a common line have no inertia about that line
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(j);
  if (es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff()) {
    throw DynamicsError("singular dumbbell inertia: zero sphere radius with collinear masses");
  }
  return j;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> mass_positions(
    const SpacecraftState& state, const AsteroidModel& asteroid,
    const DumbbellParams& params) {
  const Eigen::Matrix3d ra_t = asteroid.attitude_at(state.time).transpose();
  return {ra_t * (state.position + state.attitude * params.rho1),
          ra_t * (state.position + state.attitude * params.rho2)};
}

GravityWrench gravity_wrench(const SpacecraftState& state,
                             const AsteroidModel& asteroid,
                             const DumbbellParams& params,
                             MomentConvention convention) {
  const Eigen::Matrix3d ra = asteroid.attitude_at(state.time);
  const auto [z1, z2] = mass_positions(state, asteroid, params);

  FieldEvaluation f1;
  FieldEvaluation f2;
  try {
    f1 = asteroid.gravity.evaluate(z1);
    f2 = asteroid.gravity.evaluate(z2);
  } catch (const GravityError& err) {
    throw CollisionError(std::string("surface contact: ") + err.what());
  }
  // exterior check via the Laplacian already in hand
  const double interior_value =
      -4.0 * M_PI * asteroid.gravity.gravitational_constant() * asteroid.gravity.density();
  const double tol = 1e-3 * std::abs(interior_value);
  if (std::abs(f1.laplacian) >= tol || std::abs(f2.laplacian) >= tol) {
    throw CollisionError("dumbbell mass inside the asteroid");
  }

  GravityWrench w;
  w.force1 = params.m1 * ra * f1.attraction;
  w.force2 = params.m2 * ra * f2.attraction;
  w.force = w.force1 + w.force2;
  if (convention == MomentConvention::BodyFrame) {
    // body-frame arm crossed with the force expressed in the body frame
    w.moment1 = params.m1 * params.rho1.cross(state.attitude.transpose() * ra * f1.attraction);
    w.moment2 = params.m2 * params.rho2.cross(state.attitude.transpose() * ra * f2.attraction);
  } else {
    // literal printed composition: asteroid-frame arm, attitude-mapped force
    const Eigen::Matrix3d ra_t = ra.transpose();
    w.moment1 = params.m1 * (ra_t * params.rho1).cross(state.attitude.transpose() * f1.attraction);
    w.moment2 = params.m2 * (ra_t * params.rho2).cross(state.attitude.transpose() * f2.attraction);
  }
  w.moment = w.moment1 + w.moment2;
  return w;
}

StateDerivative eom(const SpacecraftState& state, const AsteroidModel& asteroid,
                    const DumbbellParams& params, const WrenchInput& wrench,
                    MomentConvention convention) {
  const GravityWrench g = gravity_wrench(state, asteroid, params, convention);
  StateDerivative d;
  d.velocity = state.velocity;
  d.acceleration = (g.force + wrench.force) / params.total_mass();
  const Eigen::Vector3d& omega = state.angular_velocity;
  d.angular_acceleration = params.inertia.ldlt().solve(
      -omega.cross(params.inertia * omega) + g.moment + wrench.moment);
  if (!d.acceleration.allFinite() || !d.angular_acceleration.allFinite()) {
    throw DynamicsError("non-finite state derivative");
  }
  return d;
}

SpacecraftState step(const SpacecraftState& state, const DerivativeFn& derivative,
                     double dt) {
  if (dt <= 0.0) throw DynamicsError("step size must be positive");

  struct Slope {
    Eigen::Vector3d dx, dv, du, dw;
  };
  // Stage state: attitude parameterized as R0 * exp(hat(u)).
  const auto eval = [&](double h, const Slope* k) {
    SpacecraftState s = state;
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    if (k != nullptr) {
      s.position += h * k->dx;
      s.velocity += h * k->dv;
      s.angular_velocity += h * k->dw;
      u = h * k->du;
      s.attitude = state.attitude * exp_so3<double>(u);
      s.time += h;
    }
    const StateDerivative d = derivative(s);
    return Slope{s.velocity, d.acceleration, dexpinv<double>(u, s.angular_velocity),
                 d.angular_acceleration};
  };

  const Slope k1 = eval(0.0, nullptr);
  const Slope k2 = eval(0.5 * dt, &k1);
  const Slope k3 = eval(0.5 * dt, &k2);
  const Slope k4 = eval(dt, &k3);

  const auto combine = [&](auto proj) -> Eigen::Vector3d {
    return (dt / 6.0) * (proj(k1) + 2.0 * proj(k2) + 2.0 * proj(k3) + proj(k4));
  };

  SpacecraftState next = state;
  next.position += combine([](const Slope& k) { return k.dx; });
  next.velocity += combine([](const Slope& k) { return k.dv; });
  next.angular_velocity += combine([](const Slope& k) { return k.dw; });
  next.attitude = state.attitude * exp_so3<double>(combine([](const Slope& k) { return k.du; }));
  next.time = state.time + dt;
  if (orthonormality_error(next.attitude) > 1e-12) {
    next.attitude = project_to_so3(next.attitude);
  }
  return next;
}

EnergyDiagnostics energy(const SpacecraftState& state, const AsteroidModel& asteroid,
                         const DumbbellParams& params) {
  const auto [z1, z2] = mass_positions(state, asteroid, params);
  EnergyDiagnostics e;
  e.kinetic = 0.5 * params.total_mass() * state.velocity.squaredNorm() +
              0.5 * state.angular_velocity.dot(params.inertia * state.angular_velocity);
  e.potential = -params.m1 * asteroid.gravity.evaluate(z1).potential -
                params.m2 * asteroid.gravity.evaluate(z2).potential;
  e.total = e.kinetic + e.potential;
  return e;
}

double jacobi_energy(const SpacecraftState& state, const AsteroidModel& asteroid,
                     const DumbbellParams& params) {
  const EnergyDiagnostics e = energy(state, asteroid, params);
  const Eigen::Vector3d angular_momentum =
      params.total_mass() * state.position.cross(state.velocity) +
      state.attitude * (params.inertia * state.angular_velocity);
  return e.total - asteroid.spin_rate * angular_momentum.z();
}

}  // namespace astro
