#include "astro/mesh.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace astro {

namespace {

constexpr char kBinaryMagic[4] = {'P', 'M', 'S', 'H'};
constexpr std::uint8_t kBinaryVersion = 1;

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
  throw MeshError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

double TriangleMesh::bounding_diagonal() const {
  if (vertices.empty()) return 0.0;
  Eigen::Vector3d lo = vertices.front();
  Eigen::Vector3d hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

double TriangleMesh::max_vertex_radius() const {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, v.norm());
  return r;
}

double TriangleMesh::min_vertex_radius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) r = std::min(r, v.norm());
  return r;
}

double TriangleMesh::signed_volume() const {
  double six_v = 0.0;
  for (const auto& f : faces) {
    six_v += vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
  }
  return six_v / 6.0;
}

Eigen::Vector3d TriangleMesh::centroid() const {
  // Volume-weighted centroid of the enclosed solid (tetrahedra against origin).
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  double six_v = 0.0;
  for (const auto& f : faces) {
    const double w = vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
    six_v += w;
    c += w * (vertices[f[0]] + vertices[f[1]] + vertices[f[2]]) / 4.0;
  }
  if (std::abs(six_v) < 1e-300) return Eigen::Vector3d::Zero();
  return c / six_v;
}

void TriangleMesh::validate() const {
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& f = faces[k];
    for (int i : f) {
      if (i < 0 || i >= nv) {
        throw MeshError("face " + std::to_string(k) + ": vertex index " +
                        std::to_string(i) + " out of range");
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      throw MeshError("face " + std::to_string(k) + ": repeated vertex index");
    }
  }
}

TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);

  TriangleMesh mesh;
  double scale = 1.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("units km") != std::string::npos) scale = 1000.0;
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z)) parse_fail(path, lineno, "malformed vertex record");
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        // accept i, i/t, i//n forms; only the vertex index is used
        const std::size_t slash = tok.find('/');
        if (slash != std::string::npos) tok = tok.substr(0, slash);
        try {
          idx.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          parse_fail(path, lineno, "malformed face index '" + tok + "'");
        }
      }
      if (idx.size() != 3) parse_fail(path, lineno, "non-triangular face");
      std::array<int, 3> f{};
      for (int i = 0; i < 3; ++i) {
        const int raw = idx[i];
        // OBJ indices are 1-based; negatives count from the end
        f[i] = raw > 0 ? raw - 1 : static_cast<int>(mesh.vertices.size()) + raw;
      }
      mesh.faces.push_back(f);
    } else if (tag == "vn" || tag == "vt" || tag == "o" || tag == "g" ||
               tag == "s" || tag == "mtllib" || tag == "usemtl") {
      continue;
    } else {
      parse_fail(path, lineno, "unsupported record '" + tag + "'");
    }
  }
  if (scale != 1.0) {
    for (auto& v : mesh.vertices) v *= scale;
  }
  mesh.validate();
  return mesh;
}

void save_mesh_binary(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot open output file: " + path);
  out.write(kBinaryMagic, 4);
  out.put(static_cast<char>(kBinaryVersion));
  const std::uint32_t nv = static_cast<std::uint32_t>(mesh.vertices.size());
  const std::uint32_t nf = static_cast<std::uint32_t>(mesh.faces.size());
  out.write(reinterpret_cast<const char*>(&nv), 4);
  out.write(reinterpret_cast<const char*>(&nf), 4);
  for (const auto& v : mesh.vertices) {
    const double xyz[3] = {v.x(), v.y(), v.z()};
    out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
  }
  for (const auto& f : mesh.faces) {
    const std::uint32_t ijk[3] = {static_cast<std::uint32_t>(f[0]),
                                  static_cast<std::uint32_t>(f[1]),
                                  static_cast<std::uint32_t>(f[2])};
    out.write(reinterpret_cast<const char*>(ijk), sizeof(ijk));
  }
  if (!out) throw MeshError("write failed: " + path);
}

TriangleMesh load_mesh_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kBinaryMagic, 4) != 0) {
    throw MeshError("not a mesh cache file: " + path);
  }
  const int version = in.get();
  if (version != kBinaryVersion) {
    throw MeshError("unsupported mesh cache version " + std::to_string(version));
  }
  std::uint32_t nv = 0;
  std::uint32_t nf = 0;
  in.read(reinterpret_cast<char*>(&nv), 4);
  in.read(reinterpret_cast<char*>(&nf), 4);
  TriangleMesh mesh;
  mesh.vertices.resize(nv);
  mesh.faces.resize(nf);
  for (auto& v : mesh.vertices) {
    double xyz[3];
    in.read(reinterpret_cast<char*>(xyz), sizeof(xyz));
    v = Eigen::Vector3d(xyz[0], xyz[1], xyz[2]);
  }
  for (auto& f : mesh.faces) {
    std::uint32_t ijk[3];
    in.read(reinterpret_cast<char*>(ijk), sizeof(ijk));
    f = {static_cast<int>(ijk[0]), static_cast<int>(ijk[1]),
         static_cast<int>(ijk[2])};
  }
  if (!in) throw MeshError("truncated mesh cache file: " + path);
  mesh.validate();
  return mesh;
}

TriangleMesh load_mesh(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw MeshError("cannot open mesh file: " + path);
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  probe.close();
  if (std::memcmp(magic, kBinaryMagic, 4) == 0) return load_mesh_binary(path);
  return load_obj(path);
}

PolyhedronTopology build_topology(const TriangleMesh& mesh) {
  mesh.validate();
  PolyhedronTopology topo;
  topo.mesh = mesh;

  const double diag = mesh.bounding_diagonal();
  const double area_floor = 1e-12 * diag * diag;

  topo.face_normals.reserve(mesh.faces.size());
  for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
    const auto& f = mesh.faces[k];
    const Eigen::Vector3d n = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                                  .cross(mesh.vertices[f[2]] - mesh.vertices[f[1]]);
    if (0.5 * n.norm() < area_floor) {
      throw MeshError("face " + std::to_string(k) + ": zero-area face");
    }
    topo.face_normals.push_back(n.normalized());
  }

  // Gather directed edges; each undirected edge must occur exactly twice,
  // once in each direction, for a closed consistently wound mesh.
  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
    const auto& f = mesh.faces[k];
    for (int i = 0; i < 3; ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        MeshEdge e;
        e.v0 = a;
        e.v1 = b;
        e.face_a = static_cast<int>(k);
        edge_index.emplace(key, static_cast<int>(topo.edges.size()));
        topo.edges.push_back(e);
      } else {
        MeshEdge& e = topo.edges[it->second];
        if (e.face_b != -1) {
          throw MeshError("edge (" + std::to_string(key.first) + "," +
                          std::to_string(key.second) +
                          "): shared by more than two faces");
        }
        if (e.v0 == a && e.v1 == b) {
          throw MeshError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                          "): inconsistent winding");
        }
        e.face_b = static_cast<int>(k);
      }
    }
  }
  for (const auto& e : topo.edges) {
    if (e.face_b == -1) {
      throw MeshError("edge (" + std::to_string(e.v0) + "," +
                      std::to_string(e.v1) + "): open mesh, only one adjacent face");
    }
  }

  topo.edge_normal_a.reserve(topo.edges.size());
  topo.edge_normal_b.reserve(topo.edges.size());
  for (const auto& e : topo.edges) {
    const Eigen::Vector3d along = mesh.vertices[e.v1] - mesh.vertices[e.v0];
    topo.edge_normal_a.push_back(along.cross(topo.face_normals[e.face_a]).normalized());
    topo.edge_normal_b.push_back((-along).cross(topo.face_normals[e.face_b]).normalized());
  }

  const long chi = static_cast<long>(mesh.vertices.size()) -
                   static_cast<long>(topo.edges.size()) +
                   static_cast<long>(mesh.faces.size());
  topo.euler_characteristic_warning = (chi != 2);
  return topo;
}

DyadCache build_dyads(const PolyhedronTopology& topology) {
  DyadCache cache;
  cache.topology = topology;
  cache.face_dyads.reserve(topology.face_normals.size());
  for (const auto& n : topology.face_normals) {
    cache.face_dyads.push_back(n * n.transpose());
  }
  cache.edge_dyads.reserve(topology.edges.size());
  cache.edge_lengths.reserve(topology.edges.size());
  for (std::size_t k = 0; k < topology.edges.size(); ++k) {
    const auto& e = topology.edges[k];
    const Eigen::Vector3d& na = topology.face_normals[e.face_a];
    const Eigen::Vector3d& nb = topology.face_normals[e.face_b];
    cache.edge_dyads.push_back(na * topology.edge_normal_a[k].transpose() +
                               nb * topology.edge_normal_b[k].transpose());
    cache.edge_lengths.push_back(
        (topology.mesh.vertices[e.v1] - topology.mesh.vertices[e.v0]).norm());
  }
  return cache;
}

}  // namespace astro
