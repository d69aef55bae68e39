#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace astro {

/// hat map: 3-vector -> skew-symmetric matrix, hat(w) * x == w.cross(x)
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> hat(const Eigen::Matrix<Scalar, 3, 1>& w) {
  Eigen::Matrix<Scalar, 3, 3> s;
  s << Scalar(0), -w.z(), w.y(),
       w.z(), Scalar(0), -w.x(),
       -w.y(), w.x(), Scalar(0);
  return s;
}

/// vee map: skew-symmetric matrix -> 3-vector. Throws if the input is not
/// skew-symmetric to 1e-9 (relative to its magnitude).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> vee(const Eigen::Matrix<Scalar, 3, 3>& s) {
  const Scalar scale = std::max(s.norm(), Scalar(1));
  if ((s + s.transpose()).norm() > Scalar(1e-9) * scale) {
    throw std::invalid_argument("vee: input matrix is not skew-symmetric");
  }
  return {s(2, 1), s(0, 2), s(1, 0)};
}

/// vee of the skew part of an arbitrary matrix, (A - A^T)/2, no validity check
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> vee_skew_part(const Eigen::Matrix<Scalar, 3, 3>& a) {
  return {Scalar(0.5) * (a(2, 1) - a(1, 2)),
          Scalar(0.5) * (a(0, 2) - a(2, 0)),
          Scalar(0.5) * (a(1, 0) - a(0, 1))};
}

/// Rodrigues formula, exp(hat(w)) on SO(3)
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> exp_so3(const Eigen::Matrix<Scalar, 3, 1>& w) {
  using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
  const Scalar theta = w.norm();
  if (theta < Scalar(1e-12)) {
    const Mat3 s = hat(w);
    return Mat3::Identity() + s + Scalar(0.5) * s * s;
  }
  const Mat3 s = hat<Scalar>(w / theta);
  return Mat3::Identity() + std::sin(theta) * s +
         (Scalar(1) - std::cos(theta)) * s * s;
}

/// Inverse of the right-trivialized tangent of exp, truncated after the
/// second commutator; sufficient for a fourth order Munthe-Kaas step.
/// For R(t) = R0 exp(hat(u)) with body rate Omega:  du/dt = dexpinv(u, Omega).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> dexpinv(const Eigen::Matrix<Scalar, 3, 1>& u,
                                    const Eigen::Matrix<Scalar, 3, 1>& omega) {
  return omega + Scalar(0.5) * u.cross(omega) +
         (Scalar(1) / Scalar(12)) * u.cross(u.cross(omega));
}

/// Nearest rotation matrix in the Frobenius sense (polar projection via SVD)
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> project_to_so3(const Eigen::Matrix<Scalar, 3, 3>& m) {
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, 3, 3>> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix<Scalar, 3, 3> r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < Scalar(0)) {
    Eigen::Matrix<Scalar, 3, 3> d = Eigen::Matrix<Scalar, 3, 3>::Identity();
    d(2, 2) = Scalar(-1);
    r = svd.matrixU() * d * svd.matrixV().transpose();
  }
  return r;
}

/// Departure from orthonormality, ||R^T R - I||_F
template <typename Scalar>
Scalar orthonormality_error(const Eigen::Matrix<Scalar, 3, 3>& r) {
  return (r.transpose() * r - Eigen::Matrix<Scalar, 3, 3>::Identity()).norm();
}

template <typename Scalar>
bool is_rotation(const Eigen::Matrix<Scalar, 3, 3>& r, Scalar tol = Scalar(1e-6)) {
  return orthonormality_error(r) <= tol && r.determinant() > Scalar(0);
}

}  // namespace astro
