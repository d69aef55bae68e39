#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace astro {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed oriented triangle mesh in the asteroid body-fixed frame, SI meters.
/// Face vertex indices are ordered counterclockwise about the outward normal.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;

  double bounding_diagonal() const;
  double max_vertex_radius() const;
  double min_vertex_radius() const;
  /// Enclosed volume by the divergence theorem; positive for outward winding.
  double signed_volume() const;
  Eigen::Vector3d centroid() const;

  /// Index/arity checks that do not require topology construction.
  void validate() const;
};

/// Load a shape model. Dispatches on content: the binary cache magic, else
/// Wavefront OBJ. OBJ coordinates are kilometers when the file contains a
/// `# units km` comment, meters otherwise.
TriangleMesh load_mesh(const std::string& path);

TriangleMesh load_obj(const std::string& path);

/// Binary cache: magic "PMSH", version byte 1, little-endian
/// u32 vertex count, u32 face count, f64 xyz triples, u32 index triples.
void save_mesh_binary(const TriangleMesh& mesh, const std::string& path);
TriangleMesh load_mesh_binary(const std::string& path);

/// Unique undirected edge with its two adjacent faces. The stored direction
/// v0 -> v1 is the traversal direction within face_a; face_b traverses it
/// v1 -> v0.
struct MeshEdge {
  int v0 = -1;
  int v1 = -1;
  int face_a = -1;
  int face_b = -1;
};

/// Edge adjacency plus the unit normals entering the gravity dyads.
struct PolyhedronTopology {
  TriangleMesh mesh;
  std::vector<MeshEdge> edges;
  std::vector<Eigen::Vector3d> face_normals;      // unit outward, one per face
  std::vector<Eigen::Vector3d> edge_normal_a;     // in-plane normal of edge within face_a
  std::vector<Eigen::Vector3d> edge_normal_b;     // in-plane normal of edge within face_b
  bool euler_characteristic_warning = false;      // V - E + F != 2
};

/// Build edge topology and unit normals. Throws MeshError on open meshes,
/// inconsistent winding, or degenerate (zero-area) faces.
PolyhedronTopology build_topology(const TriangleMesh& mesh);

/// Position-independent face and edge dyads of the polyhedron field.
struct DyadCache {
  PolyhedronTopology topology;
  std::vector<Eigen::Matrix3d> face_dyads;   // n_f n_f^T
  std::vector<Eigen::Matrix3d> edge_dyads;   // n_A n_e^A^T + n_B n_e'^B^T
  std::vector<double> edge_lengths;
};

DyadCache build_dyads(const PolyhedronTopology& topology);

}  // namespace astro
