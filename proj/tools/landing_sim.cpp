#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "astro/controller.hpp"
#include "astro/gravity.hpp"
#include "astro/mesh.hpp"
#include "astro/scenario.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& csv_override,
            const std::string& json_override) {
  astro::ScenarioConfig config = astro::load_config(config_path);
  if (!csv_override.empty()) config.csv_path = csv_override;
  if (!json_override.empty()) config.json_path = json_override;
  const astro::TrajectoryLog log = astro::run_scenario(config);

  std::printf("steps:               %zu\n", log.records.size());
  std::printf("termination:         %s\n", astro::to_string(log.summary.termination).c_str());
  std::printf("phase switch index:  %ld\n", log.summary.phase_switch_index);
  std::printf("final |e_x|:         %.6g m\n", log.summary.final_position_error);
  std::printf("final Psi:           %.6g\n", log.summary.final_attitude_error);
  std::printf("int |u_f| dt:        %.6g N s\n", log.summary.force_effort);
  std::printf("int |u_m| dt:        %.6g N m s\n", log.summary.moment_effort);

  switch (log.summary.termination) {
    case astro::Termination::Completed: return 0;
    case astro::Termination::Collision: return 3;
    case astro::Termination::CommandBelowSurface: return 3;
    case astro::Termination::NonFinite: return 4;
  }
  return 4;
}

int cmd_field(const std::string& mesh_path, const std::string& point_str,
              double big_g, double sigma) {
  Eigen::Vector3d p;
  if (std::sscanf(point_str.c_str(), "%lf,%lf,%lf", &p.x(), &p.y(), &p.z()) != 3) {
    throw astro::ConfigError("--point: expected x,y,z");
  }
  const astro::TriangleMesh mesh = astro::load_mesh(mesh_path);
  const astro::GravityModel model(astro::build_dyads(astro::build_topology(mesh)),
                                  big_g, sigma);
  const astro::FieldEvaluation f = model.evaluate(p);
  nlohmann::json out;
  out["point"] = {p.x(), p.y(), p.z()};
  out["potential"] = f.potential;
  out["attraction"] = {f.attraction.x(), f.attraction.y(), f.attraction.z()};
  nlohmann::json grad = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grad.push_back(f.gradient_matrix(i, j));
  out["gradient_matrix"] = grad;
  out["laplacian"] = f.laplacian;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_validate(const std::string& mesh_path) {
  const astro::TriangleMesh mesh = astro::load_mesh(mesh_path);
  const astro::PolyhedronTopology topo = astro::build_topology(mesh);
  std::printf("vertices: %zu\n", mesh.vertices.size());
  std::printf("edges:    %zu\n", topo.edges.size());
  std::printf("faces:    %zu\n", mesh.faces.size());
  const long chi = static_cast<long>(mesh.vertices.size()) -
                   static_cast<long>(topo.edges.size()) +
                   static_cast<long>(mesh.faces.size());
  std::printf("euler characteristic: %ld%s\n", chi,
              topo.euler_characteristic_warning ? "  (warning: not 2)" : "");
  std::printf("volume:   %.9g m^3\n", mesh.signed_volume());
  std::printf("max vertex radius: %.9g m\n", mesh.max_vertex_radius());
  std::printf("mesh is a closed, consistently oriented 2-manifold\n");
  return 0;
}

int cmd_gains(double mass, double zeta, double wn, double j_max) {
  if (zeta <= 0.0 || wn <= 0.0 || mass <= 0.0) {
    throw astro::ConfigError("gains: mass, zeta and wn must be positive");
  }
  std::printf("kx      = %.9g N/m\n", mass * wn * wn);
  std::printf("kv      = %.9g N s/m\n", 2.0 * zeta * wn * mass);
  if (j_max > 0.0) {
    std::printf("kR      = %.9g N m\n", j_max * wn * wn);
    std::printf("kOmega  = %.9g N m s\n", 2.0 * zeta * wn * j_max);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-body landing simulation: polyhedron gravity, coupled "
               "orbit-attitude dynamics, geometric tracking control"};
  app.require_subcommand(1);

  std::string config_path;
  std::string csv_override;
  std::string json_override;
  auto* run = app.add_subcommand("run", "Run a landing scenario from a JSON config");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--csv", csv_override, "override CSV output path");
  run->add_option("--json", json_override, "override JSON output path");
  long seed = 0;
  run->add_option("--seed", seed, "recorded for forward compatibility; unused");

  std::string mesh_path;
  std::string point_str;
  double big_g = 6.67430e-11;
  double sigma = 1000.0;
  auto* field = app.add_subcommand("field", "Evaluate the gravity field at a point");
  field->add_option("--mesh", mesh_path, "shape model (OBJ or binary cache)")->required();
  field->add_option("--point", point_str, "body-frame point, meters, x,y,z")->required();
  field->add_option("--G", big_g, "gravitational constant, m^3 kg^-1 s^-2");
  field->add_option("--sigma", sigma, "density, kg/m^3");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-mesh", "Validate a shape model");
  validate->add_option("mesh", validate_path, "shape model path")->required();

  double mass = 0.0;
  double zeta = 1.0;
  double wn = 0.0;
  double j_max = 0.0;
  auto* gains = app.add_subcommand("gains", "Second-order gain design");
  gains->add_option("--mass", mass, "total mass, kg")->required();
  gains->add_option("--zeta", zeta, "damping ratio")->required();
  gains->add_option("--wn", wn, "natural frequency, rad/s")->required();
  gains->add_option("--jmax", j_max, "largest inertia eigenvalue, kg m^2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, csv_override, json_override);
    if (field->parsed()) return cmd_field(mesh_path, point_str, big_g, sigma);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (gains->parsed()) return cmd_gains(mass, zeta, wn, j_max);
  } catch (const astro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const astro::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
