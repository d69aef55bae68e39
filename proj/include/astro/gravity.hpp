#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "astro/mesh.hpp"

namespace astro {

class GravityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field point touches an edge or face plane singularity of the summation.
class SingularFieldPoint : public GravityError {
 public:
  using GravityError::GravityError;
};

/// Potential and its derivatives at one body-frame point, SI units.
struct FieldEvaluation {
  double potential = 0.0;                                    // m^2 s^-2
  Eigen::Vector3d attraction = Eigen::Vector3d::Zero();      // m s^-2, toward body
  Eigen::Matrix3d gradient_matrix = Eigen::Matrix3d::Zero(); // s^-2
  double laplacian = 0.0;                                    // s^-2
};

/// Log factor of the line-segment potential for one edge.
/// ri, rj are distances from the field point to the edge endpoints.
double edge_factor(double ri, double rj, double edge_length, double eps_edge);

/// Signed solid angle subtended by a triangular face; ri, rj, rk are the
/// vectors from the field point to the face vertices.
double face_factor(const Eigen::Vector3d& ri, const Eigen::Vector3d& rj,
                   const Eigen::Vector3d& rk);

/// Constant-density polyhedron gravitational field. Immutable after
/// construction and safe for concurrent evaluation.
class GravityModel {
 public:
  enum class Region { Exterior, Interior };

  GravityModel(DyadCache cache, double gravitational_constant, double density);

  /// Potential, attraction, gradient matrix and Laplacian in one pass over
  /// all edges and faces. Valid for points strictly outside the body.
  FieldEvaluation evaluate(const Eigen::Vector3d& point) const;

  /// Laplacian only (face sum); cheap interior/exterior probe.
  double laplacian(const Eigen::Vector3d& point) const;

  /// Interior iff the Laplacian sits at -4*pi*G*sigma; points whose Laplacian
  /// lands near neither branch raise GravityError.
  Region classify(const Eigen::Vector3d& point) const;

  double gravitational_constant() const { return big_g_; }
  double density() const { return density_; }
  /// sigma * enclosed volume
  double total_mass() const;
  const DyadCache& cache() const { return cache_; }

 private:
  DyadCache cache_;
  double big_g_;
  double density_;
  double eps_edge_;  // singularity guard, 1e-10 * mesh diagonal
};

}  // namespace astro
