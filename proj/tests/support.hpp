#pragma once

#include <random>
#include <string>

#include "astro/gravity.hpp"
#include "astro/mesh.hpp"
#include "astro/so3.hpp"

namespace support {

inline std::string data_path(const std::string& name) {
  return std::string(ASTRO_DATA_DIR) + "/" + name;
}

/// Unit cube centered at the origin, built in code so mesh tests do not
/// depend on the OBJ loader.
inline astro::TriangleMesh unit_cube() {
  astro::TriangleMesh m;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 1; ++y)
      for (int z = 0; z <= 1; ++z)
        m.vertices.emplace_back(x - 0.5, y - 0.5, z - 0.5);
  const auto idx = [](int x, int y, int z) { return x * 4 + y * 2 + z; };
  const auto quad = [&m](int i, int j, int k, int l) {
    m.faces.push_back({i, j, k});
    m.faces.push_back({i, k, l});
  };
  quad(idx(0, 0, 0), idx(0, 0, 1), idx(0, 1, 1), idx(0, 1, 0));
  quad(idx(1, 0, 0), idx(1, 1, 0), idx(1, 1, 1), idx(1, 0, 1));
  quad(idx(0, 0, 0), idx(1, 0, 0), idx(1, 0, 1), idx(0, 0, 1));
  quad(idx(0, 1, 0), idx(0, 1, 1), idx(1, 1, 1), idx(1, 1, 0));
  quad(idx(0, 0, 0), idx(0, 1, 0), idx(1, 1, 0), idx(1, 0, 0));
  quad(idx(0, 0, 1), idx(1, 0, 1), idx(1, 1, 1), idx(0, 1, 1));
  return m;
}

inline astro::TriangleMesh scaled_cube(double side) {
  astro::TriangleMesh m = unit_cube();
  for (auto& v : m.vertices) v *= side;
  return m;
}

inline astro::TriangleMesh tetrahedron() {
  astro::TriangleMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

inline astro::GravityModel cube_gravity(double big_g = 1.0, double sigma = 1.0) {
  return astro::GravityModel(astro::build_dyads(astro::build_topology(unit_cube())),
                             big_g, sigma);
}

/// Brute-force midpoint quadrature of G sigma * integral dV / |p - q| over
/// the unit cube; independent oracle for the polyhedron potential.
inline double cube_potential_quadrature(const Eigen::Vector3d& p, double big_g,
                                        double sigma, int n = 64) {
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -0.5 + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double y = -0.5 + (j + 0.5) * h;
      for (int k = 0; k < n; ++k) {
        const double z = -0.5 + (k + 0.5) * h;
        sum += 1.0 / (p - Eigen::Vector3d(x, y, z)).norm();
      }
    }
  }
  return big_g * sigma * sum * h * h * h;
}

/// Signed solid angle of one triangle by direct surface integration of
/// (r_hat . n) dA / r^2 over a fine subdivision.
inline double solid_angle_numeric(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                  const Eigen::Vector3d& c,
                                  const Eigen::Vector3d& viewpoint, int n = 400) {
  const Eigen::Vector3d area2 = (b - a).cross(c - b);  // 2*area * n_hat
  double omega = 0.0;
  const double w = 1.0 / (n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + i < n; ++j) {
      // centroids of the upward and downward sub-triangles in barycentric grid
      for (int up = 0; up < 2; ++up) {
        if (up == 1 && j + i + 1 >= n) continue;
        const double u = (i + (up ? 2.0 / 3 : 1.0 / 3)) / n;
        const double v = (j + (up ? 2.0 / 3 : 1.0 / 3)) / n;
        const Eigen::Vector3d q = a + u * (b - a) + v * (c - a);
        const Eigen::Vector3d r = q - viewpoint;
        const double rn = r.norm();
        omega += 0.5 * w * r.dot(area2) / (rn * rn * rn);
      }
    }
  }
  return omega;
}

/// Ray-casting point containment; independent of the Laplacian route.
inline bool point_inside_mesh(const astro::TriangleMesh& mesh, const Eigen::Vector3d& p) {
  const Eigen::Vector3d dir = Eigen::Vector3d(0.5772156649, 0.3141592653, 0.7182818284).normalized();
  int crossings = 0;
  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d& v0 = mesh.vertices[f[0]];
    const Eigen::Vector3d e1 = mesh.vertices[f[1]] - v0;
    const Eigen::Vector3d e2 = mesh.vertices[f[2]] - v0;
    const Eigen::Vector3d h = dir.cross(e2);
    const double det = e1.dot(h);
    if (std::abs(det) < 1e-14) continue;
    const Eigen::Vector3d s = p - v0;
    const double u = s.dot(h) / det;
    if (u < 0.0 || u > 1.0) continue;
    const Eigen::Vector3d q = s.cross(e1);
    const double v = dir.dot(q) / det;
    if (v < 0.0 || u + v > 1.0) continue;
    if (e2.dot(q) / det > 0.0) ++crossings;
  }
  return crossings % 2 == 1;
}

inline Eigen::Vector3d random_unit_vector(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6) v = Eigen::Vector3d(n(rng), n(rng), n(rng));
  return v.normalized();
}

inline Eigen::Matrix3d random_rotation(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  return astro::exp_so3<double>(ang(rng) * random_unit_vector(rng));
}

}  // namespace support
