#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>

#include "astro/mesh.hpp"
#include "support.hpp"

using namespace astro;

namespace {

std::string write_temp(const std::string& contents) {
  static int counter = 0;
  std::string path = "mesh_test_tmp_" + std::to_string(counter++) + ".obj";
  std::ofstream out(path);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("load_obj reads the cube fixture") {
  const TriangleMesh mesh = load_obj(support::data_path("cube.obj"));
  CHECK(mesh.vertices.size() == 8);
  CHECK(mesh.faces.size() == 12);
  CHECK(mesh.signed_volume() == doctest::Approx(1.0));
}

TEST_CASE("load_obj rejects a quad face") {
  const std::string path = write_temp(
      "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  CHECK_THROWS_WITH_AS(load_obj(path), doctest::Contains("non-triangular face"),
                       MeshError);
  std::remove(path.c_str());
}

TEST_CASE("load_obj rejects out-of-range indices") {
  const std::string path = write_temp("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
  CHECK_THROWS_WITH_AS(load_obj(path), doctest::Contains("out of range"), MeshError);
  std::remove(path.c_str());
}

TEST_CASE("load_obj reports parse errors with line numbers") {
  const std::string path = write_temp("v 0 0 0\nv 1 zero 0\n");
  CHECK_THROWS_WITH_AS(load_obj(path), doctest::Contains(":2:"), MeshError);
  std::remove(path.c_str());
}

TEST_CASE("units km comment scales vertices to meters") {
  const TriangleMesh mesh = load_obj(support::data_path("itokawa_low_64.obj"));
  CHECK(mesh.faces.size() == 64);  // low-resolution landing model
  // largest vertex radius lands in meters, not kilometers
  CHECK(mesh.max_vertex_radius() == doctest::Approx(256.449).epsilon(1e-4));
}

TEST_CASE("missing file raises") {
  CHECK_THROWS_AS(load_mesh("no_such_mesh.obj"), MeshError);
}

TEST_CASE("binary cache round trip") {
  const TriangleMesh mesh = support::unit_cube();
  save_mesh_binary(mesh, "mesh_cache_tmp.bin");
  const TriangleMesh back = load_mesh("mesh_cache_tmp.bin");  // magic dispatch
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  REQUIRE(back.faces == mesh.faces);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    CHECK(back.vertices[i] == mesh.vertices[i]);
  }
  std::remove("mesh_cache_tmp.bin");
}

TEST_CASE("topology of the unit cube") {
  const PolyhedronTopology topo = build_topology(support::unit_cube());
  CHECK(topo.edges.size() == 18);  // 8 - E + 12 = 2
  CHECK_FALSE(topo.euler_characteristic_warning);
  CHECK(topo.edges.size() * 2 == topo.mesh.faces.size() * 3);
  for (std::size_t k = 0; k < topo.edges.size(); ++k) {
    const auto& e = topo.edges[k];
    const Eigen::Vector3d along =
        (topo.mesh.vertices[e.v1] - topo.mesh.vertices[e.v0]).normalized();
    CHECK(std::abs(topo.face_normals[e.face_a].norm() - 1.0) < 1e-12);
    CHECK(std::abs(topo.edge_normal_a[k].norm() - 1.0) < 1e-12);
    CHECK(std::abs(topo.edge_normal_b[k].norm() - 1.0) < 1e-12);
    // in-plane edge normals are orthogonal to both the face normal and the edge
    CHECK(std::abs(topo.edge_normal_a[k].dot(topo.face_normals[e.face_a])) < 1e-12);
    CHECK(std::abs(topo.edge_normal_a[k].dot(along)) < 1e-12);
    CHECK(std::abs(topo.edge_normal_b[k].dot(topo.face_normals[e.face_b])) < 1e-12);
    CHECK(std::abs(topo.edge_normal_b[k].dot(along)) < 1e-12);
  }
}

TEST_CASE("topology of the tetrahedron") {
  const PolyhedronTopology topo = build_topology(support::tetrahedron());
  CHECK(topo.edges.size() == 6);
}

TEST_CASE("normals point outward for star-shaped bodies") {
  for (const TriangleMesh& mesh :
       {support::unit_cube(), support::tetrahedron(),
        load_obj(support::data_path("itokawa_low_64.obj"))}) {
    const PolyhedronTopology topo = build_topology(mesh);
    const Eigen::Vector3d c = mesh.centroid();
    for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
      CHECK(topo.face_normals[k].dot(mesh.vertices[mesh.faces[k][0]] - c) > 0.0);
    }
  }
}

TEST_CASE("reversed face winding is rejected") {
  TriangleMesh mesh = support::unit_cube();
  std::swap(mesh.faces[3][0], mesh.faces[3][1]);
  CHECK_THROWS_WITH_AS(build_topology(mesh), doctest::Contains("inconsistent winding"),
                       MeshError);
}

TEST_CASE("open mesh is rejected") {
  TriangleMesh mesh = support::unit_cube();
  mesh.faces.pop_back();
  CHECK_THROWS_WITH_AS(build_topology(mesh), doctest::Contains("open mesh"), MeshError);
}

TEST_CASE("zero-area face is rejected") {
  TriangleMesh mesh = support::unit_cube();
  mesh.vertices.push_back(mesh.vertices[0]);
  mesh.vertices.push_back(mesh.vertices[0] + Eigen::Vector3d(1e-15, 0, 0));
  mesh.faces.push_back({0, 8, 9});
  CHECK_THROWS_WITH_AS(build_topology(mesh), doctest::Contains("zero-area"), MeshError);
}

TEST_CASE("face dyads are rank-1 projectors") {
  const DyadCache cache = build_dyads(build_topology(support::unit_cube()));
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::size_t k = 0; k < cache.face_dyads.size(); ++k) {
    const Eigen::Matrix3d& f = cache.face_dyads[k];
    CHECK((f - f.transpose()).norm() < 1e-14);
    CHECK(f.trace() == doctest::Approx(1.0));
    const Eigen::Vector3d& nf = cache.topology.face_normals[k];
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::Vector3d x(n(rng), n(rng), n(rng));
      CHECK((f * x - nf.dot(x) * nf).norm() < 1e-12);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(f);
    CHECK(es.eigenvalues().minCoeff() > -1e-14);  // psd, rank 1
    CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0));
  }
}

TEST_CASE("edge dyads are symmetric") {
  for (const TriangleMesh& mesh :
       {support::unit_cube(), load_obj(support::data_path("itokawa_low_64.obj"))}) {
    const DyadCache cache = build_dyads(build_topology(mesh));
    double scale = 0.0;
    for (const auto& e : cache.edge_dyads) scale = std::max(scale, e.norm());
    for (const auto& e : cache.edge_dyads) {
      CHECK((e - e.transpose()).norm() < 1e-12 * scale);
    }
  }
}

TEST_CASE("face order permutation leaves edges and dyads unchanged") {
  const TriangleMesh base = support::unit_cube();
  TriangleMesh shuffled = base;
  std::mt19937 rng(11);
  std::shuffle(shuffled.faces.begin(), shuffled.faces.end(), rng);

  const auto key_of = [](const MeshEdge& e) { return std::minmax(e.v0, e.v1); };
  const DyadCache a = build_dyads(build_topology(base));
  const DyadCache b = build_dyads(build_topology(shuffled));
  REQUIRE(a.edge_dyads.size() == b.edge_dyads.size());

  std::map<std::pair<int, int>, Eigen::Matrix3d> dyad_by_edge;
  for (std::size_t k = 0; k < a.topology.edges.size(); ++k) {
    dyad_by_edge[key_of(a.topology.edges[k])] = a.edge_dyads[k];
  }
  for (std::size_t k = 0; k < b.topology.edges.size(); ++k) {
    const auto it = dyad_by_edge.find(key_of(b.topology.edges[k]));
    REQUIRE(it != dyad_by_edge.end());
    CHECK((it->second - b.edge_dyads[k]).norm() < 1e-14);
  }
}
