#include "astro/gravity.hpp"

#include <cmath>

namespace astro {

double edge_factor(double ri, double rj, double edge_length, double eps_edge) {
  if (edge_length <= 0.0) return 0.0;
  const double denom = ri + rj - edge_length;
  if (denom < eps_edge) {
    throw SingularFieldPoint("field point lies on an edge of the polyhedron");
  }
  return std::log((ri + rj + edge_length) / denom);
}

double face_factor(const Eigen::Vector3d& ri, const Eigen::Vector3d& rj,
                   const Eigen::Vector3d& rk) {
  const double ni = ri.norm();
  const double nj = rj.norm();
  const double nk = rk.norm();
  const double num = ri.dot(rj.cross(rk));
  const double den = ni * nj * nk + ni * rj.dot(rk) + nj * rk.dot(ri) + nk * ri.dot(rj);
  const double scale = ni * nj * nk;
  if (std::abs(num) < 1e-12 * scale && std::abs(den) < 1e-12 * scale) {
    throw SingularFieldPoint("field point lies in a face of the polyhedron");
  }
  // two-argument arctangent keeps the full solid-angle range
  return 2.0 * std::atan2(num, den);
}

GravityModel::GravityModel(DyadCache cache, double gravitational_constant,
                           double density)
    : cache_(std::move(cache)),
      big_g_(gravitational_constant),
      density_(density) {
  if (big_g_ <= 0.0) throw GravityError("gravitational constant must be positive");
  if (density_ <= 0.0) throw GravityError("density must be positive");
  eps_edge_ = 1e-10 * cache_.topology.mesh.bounding_diagonal();
}

double GravityModel::total_mass() const {
  return density_ * cache_.topology.mesh.signed_volume();
}

FieldEvaluation GravityModel::evaluate(const Eigen::Vector3d& point) const {
  const TriangleMesh& mesh = cache_.topology.mesh;
  const std::size_t nv = mesh.vertices.size();

  // Vertex offsets from the field point, shared by every edge and face term.
  std::vector<Eigen::Vector3d> rv(nv);
  std::vector<double> rn(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    rv[i] = mesh.vertices[i] - point;
    rn[i] = rv[i].norm();
  }

  double u_edge = 0.0;
  Eigen::Vector3d grad_edge = Eigen::Vector3d::Zero();
  Eigen::Matrix3d hess_edge = Eigen::Matrix3d::Zero();
  const auto& edges = cache_.topology.edges;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double le =
        edge_factor(rn[edges[k].v0], rn[edges[k].v1], cache_.edge_lengths[k], eps_edge_);
    const Eigen::Matrix3d& ee = cache_.edge_dyads[k];
    const Eigen::Vector3d& re = rv[edges[k].v0];
    const Eigen::Vector3d er = ee * re;
    u_edge += re.dot(er) * le;
    grad_edge += er * le;
    hess_edge += ee * le;
    if (!std::isfinite(le)) {
      throw GravityError("non-finite edge term at edge " + std::to_string(k));
    }
  }

  double u_face = 0.0;
  Eigen::Vector3d grad_face = Eigen::Vector3d::Zero();
  Eigen::Matrix3d hess_face = Eigen::Matrix3d::Zero();
  double omega_sum = 0.0;
  const auto& faces = mesh.faces;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const double wf = face_factor(rv[faces[k][0]], rv[faces[k][1]], rv[faces[k][2]]);
    const Eigen::Matrix3d& ff = cache_.face_dyads[k];
    const Eigen::Vector3d& rf = rv[faces[k][0]];
    const Eigen::Vector3d fr = ff * rf;
    u_face += rf.dot(fr) * wf;
    grad_face += fr * wf;
    hess_face += ff * wf;
    omega_sum += wf;
    if (!std::isfinite(wf)) {
      throw GravityError("non-finite face term at face " + std::to_string(k));
    }
  }

  const double gs = big_g_ * density_;
  FieldEvaluation out;
  out.potential = 0.5 * gs * (u_edge - u_face);
  out.attraction = gs * (-grad_edge + grad_face);
  out.gradient_matrix = gs * (hess_edge - hess_face);
  out.laplacian = -gs * omega_sum;
  if (!std::isfinite(out.potential) || !out.attraction.allFinite()) {
    throw GravityError("non-finite field evaluation");
  }
  return out;
}

double GravityModel::laplacian(const Eigen::Vector3d& point) const {
  const TriangleMesh& mesh = cache_.topology.mesh;
  double omega_sum = 0.0;
  for (const auto& f : mesh.faces) {
    omega_sum += face_factor(mesh.vertices[f[0]] - point, mesh.vertices[f[1]] - point,
                             mesh.vertices[f[2]] - point);
  }
  return -big_g_ * density_ * omega_sum;
}

GravityModel::Region GravityModel::classify(const Eigen::Vector3d& point) const {
  const double interior_value = -4.0 * M_PI * big_g_ * density_;
  const double lap = laplacian(point);
  const double tol = 1e-3 * std::abs(interior_value);
  if (std::abs(lap - interior_value) < tol) return Region::Interior;
  if (std::abs(lap) < tol) return Region::Exterior;
  throw GravityError("ambiguous interior/exterior classification (Laplacian " +
                     std::to_string(lap) + ")");
}

}  // namespace astro
