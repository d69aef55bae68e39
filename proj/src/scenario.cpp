#include "astro/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace astro {

namespace {

using nlohmann::json;

double unit_scale(const std::string& unit, const std::string& field) {
  if (unit.empty() || unit == "si") return 1.0;
  if (unit == "m" || unit == "s" || unit == "kg" || unit == "rad" ||
      unit == "m/s" || unit == "m/s^2" || unit == "rad/s" || unit == "kg/m^3") {
    return 1.0;
  }
  if (unit == "km") return 1000.0;
  if (unit == "km/s") return 1000.0;
  if (unit == "g/cm^3" || unit == "g/cm3") return 1000.0;
  if (unit == "h" || unit == "hr") return 3600.0;
  if (unit == "min") return 60.0;
  if (unit == "deg") return M_PI / 180.0;
  throw ConfigError(field + ": unknown unit '" + unit + "'");
}

/// Accepts a plain number (SI), a "value unit" string, or {"value":..,"unit":..}.
double parse_quantity(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::istringstream ss(j.get<std::string>());
    double value = 0.0;
    std::string unit;
    if (!(ss >> value)) throw ConfigError(field + ": expected a numeric value");
    ss >> unit;
    return value * unit_scale(unit, field);
  }
  if (j.is_object() && j.contains("value")) {
    return j["value"].get<double>() *
           unit_scale(j.value("unit", std::string{}), field);
  }
  throw ConfigError(field + ": expected number, 'value unit' string, or object");
}

Eigen::Vector3d parse_vector(const json& j, const std::string& field) {
  const json* arr = &j;
  double scale = 1.0;
  if (j.is_object() && j.contains("value")) {
    arr = &j["value"];
    scale = unit_scale(j.value("unit", std::string{}), field);
  }
  if (!arr->is_array() || arr->size() != 3) {
    throw ConfigError(field + ": expected a 3-element array");
  }
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) v[i] = (*arr)[i].get<double>() * scale;
  return v * 1.0;
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing required key '" + key + "'");
  return j[key];
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Collision: return "collision";
    case Termination::NonFinite: return "non_finite";
    case Termination::CommandBelowSurface: return "command_below_surface";
  }
  return "unknown";
}

Termination termination_from_string(const std::string& s) {
  if (s == "completed") return Termination::Completed;
  if (s == "collision") return Termination::Collision;
  if (s == "non_finite") return Termination::NonFinite;
  if (s == "command_below_surface") return Termination::CommandBelowSurface;
  throw ConfigError("unknown termination reason '" + s + "'");
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }

  ScenarioConfig c;
  c.mesh_path = require(j, "mesh", "config").get<std::string>();
  // a relative mesh path is taken relative to the config file, not the cwd
  const std::filesystem::path mesh_fs(c.mesh_path);
  if (mesh_fs.is_relative()) {
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    if (!base.empty()) c.mesh_path = (base / mesh_fs).string();
  }
  c.density = parse_quantity(require(j, "density", "config"), "density");
  if (c.density <= 0.0) throw ConfigError("density: must be positive");
  if (j.contains("gravitational_constant")) {
    c.gravitational_constant = parse_quantity(j["gravitational_constant"], "gravitational_constant");
  }
  if (j.contains("rotation_period")) {
    c.rotation_period = parse_quantity(j["rotation_period"], "rotation_period");
    if (c.rotation_period < 0.0) throw ConfigError("rotation_period: must be non-negative");
    c.spin_rate = c.rotation_period > 0.0 ? 2.0 * M_PI / c.rotation_period : 0.0;
  }

  const json& sc = require(j, "spacecraft", "config");
  c.m1 = parse_quantity(require(sc, "m1", "spacecraft"), "spacecraft.m1");
  c.m2 = parse_quantity(require(sc, "m2", "spacecraft"), "spacecraft.m2");
  c.separation = parse_quantity(require(sc, "separation", "spacecraft"), "spacecraft.separation");
  if (sc.contains("sphere_radius")) {
    c.sphere_radius = parse_quantity(sc["sphere_radius"], "spacecraft.sphere_radius");
  }

  const json& init = require(j, "initial_state", "config");
  c.initial_position = parse_vector(require(init, "position", "initial_state"),
                                    "initial_state.position");
  if (init.contains("attitude_axis") || init.contains("attitude_angle")) {
    const Eigen::Vector3d axis =
        parse_vector(require(init, "attitude_axis", "initial_state"),
                     "initial_state.attitude_axis")
            .normalized();
    const double angle = parse_quantity(require(init, "attitude_angle", "initial_state"),
                                        "initial_state.attitude_angle");
    c.initial_attitude = exp_so3<double>(angle * axis);
  }
  if (init.contains("velocity")) {
    c.initial_velocity = parse_vector(init["velocity"], "initial_state.velocity");
  }
  if (init.contains("angular_velocity")) {
    c.initial_angular_velocity =
        parse_vector(init["angular_velocity"], "initial_state.angular_velocity");
  }

  const json& gd = require(j, "guidance", "config");
  c.guidance.initial_radius =
      parse_quantity(require(gd, "initial_radius", "guidance"), "guidance.initial_radius");
  c.guidance.switch_time =
      parse_quantity(require(gd, "switch_time", "guidance"), "guidance.switch_time");
  if (c.guidance.switch_time <= 0.0) throw ConfigError("guidance.switch_time: must be positive");
  if (gd.contains("descent_rate")) {
    c.guidance.descent_rate = parse_quantity(gd["descent_rate"], "guidance.descent_rate");
  } else {
    c.guidance.descent_rate = -2000.0 / c.guidance.switch_time;
  }
  const std::string mode = gd.value("mode", std::string("continuous"));
  if (mode == "continuous") {
    c.guidance.mode = GuidanceConfig::Mode::Continuous;
  } else if (mode == "paper-literal") {
    c.guidance.mode = GuidanceConfig::Mode::PaperLiteral;
  } else {
    throw ConfigError("guidance.mode: expected 'continuous' or 'paper-literal'");
  }

  if (j.contains("gains")) {
    const json& g = j["gains"];
    if (g.contains("kx")) {
      ControlGains gains;
      gains.kx = parse_quantity(require(g, "kx", "gains"), "gains.kx");
      gains.kv = parse_quantity(require(g, "kv", "gains"), "gains.kv");
      gains.kR = parse_quantity(require(g, "kR", "gains"), "gains.kR");
      gains.kOmega = parse_quantity(require(g, "kOmega", "gains"), "gains.kOmega");
      c.gains = gains;
    } else {
      c.zeta = g.value("zeta", c.zeta);
      c.wn_translation = g.value("wn_translation", c.wn_translation);
      c.wn_attitude = g.value("wn_attitude", c.wn_attitude);
    }
  }

  if (j.contains("dt")) c.dt = parse_quantity(j["dt"], "dt");
  if (c.dt <= 0.0) throw ConfigError("dt: must be positive");
  if (j.contains("t_final")) c.t_final = parse_quantity(j["t_final"], "t_final");
  if (c.t_final < c.guidance.switch_time) {
    throw ConfigError("t_final: must not be smaller than guidance.switch_time");
  }

  const std::string conv = j.value("moment_convention", std::string("body-frame"));
  if (conv == "body-frame") {
    c.moment_convention = MomentConvention::BodyFrame;
  } else if (conv == "paper-literal") {
    c.moment_convention = MomentConvention::PaperLiteral;
  } else {
    throw ConfigError("moment_convention: expected 'body-frame' or 'paper-literal'");
  }
  if (j.contains("surface_radius")) {
    c.surface_radius = parse_quantity(j["surface_radius"], "surface_radius");
  }
  if (j.contains("output")) {
    c.csv_path = j["output"].value("csv", std::string{});
    c.json_path = j["output"].value("json", std::string{});
  }
  if (j.contains("seed")) c.seed = j["seed"].get<long>();
  return c;
}

AsteroidModel build_asteroid(const ScenarioConfig& config) {
  const TriangleMesh mesh = load_mesh(config.mesh_path);
  GravityModel gravity(build_dyads(build_topology(mesh)), config.gravitational_constant,
                       config.density);
  return AsteroidModel(std::move(gravity), config.spin_rate);
}

TrajectoryLog run_loop(const ScenarioConfig& config, const AsteroidModel& asteroid,
                       const DumbbellParams& params, const ControlGains& gains,
                       const SpacecraftState& initial_state, const CommandFn& command) {
  const double surface_radius = config.surface_radius.value_or(
      asteroid.gravity.cache().topology.mesh.max_vertex_radius());
  const auto& vertices = asteroid.gravity.cache().topology.mesh.vertices;

  TrajectoryLog log;
  log.summary.termination = Termination::Completed;
  const long n_steps = std::lround(config.t_final / config.dt);
  SpacecraftState state = initial_state;

  for (long k = 0; k <= n_steps; ++k) {
    TrajectoryCommand cmd;
    GravityWrench gw;
    try {
      cmd = command(state.time);
      gw = gravity_wrench(state, asteroid, params, config.moment_convention);
    } catch (const CollisionError&) {
      log.summary.termination = Termination::Collision;
      break;
    }

    WrenchInput u;
    u.force = control_force(state, cmd, gains, params, gw.force1, gw.force2);
    u.moment = control_moment(state, cmd, gains, params, gw.moment1, gw.moment2);
    const ErrorState err = compute_errors(state, cmd);

    LogRecord rec;
    rec.t = state.time;
    rec.position = state.position;
    rec.velocity = state.velocity;
    rec.attitude = state.attitude;
    rec.angular_velocity = state.angular_velocity;
    rec.desired_position = cmd.position;
    rec.psi = err.psi;
    rec.e_x = err.e_x;
    rec.e_v = err.e_v;
    rec.e_R = err.e_R;
    rec.e_Omega = err.e_Omega;
    rec.control_force = u.force;
    rec.control_moment = u.moment;
    rec.phase = cmd.phase;

    const Eigen::Vector3d com_ast =
        asteroid.attitude_at(state.time).transpose() * state.position;
    double altitude = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) altitude = std::min(altitude, (com_ast - v).norm());
    rec.altitude = altitude;
    try {
      const FieldEvaluation fe = asteroid.gravity.evaluate(com_ast);
      rec.potential = fe.potential;
      rec.laplacian = fe.laplacian;
    } catch (const GravityError&) {
      rec.potential = std::numeric_limits<double>::quiet_NaN();
      rec.laplacian = std::numeric_limits<double>::quiet_NaN();
    }
    log.records.push_back(rec);
    if (log.summary.phase_switch_index < 0 && cmd.phase == 2) {
      log.summary.phase_switch_index = k;
    }

    const double cmd_radius =
        (asteroid.attitude_at(state.time).transpose() * cmd.position).norm();
    if (cmd_radius < surface_radius) {
      log.summary.termination = Termination::CommandBelowSurface;
      break;
    }
    if (k == n_steps) break;

    // zero-order hold of the control wrench across the step
    try {
      state = step(
          state,
          [&](const SpacecraftState& s) {
            return eom(s, asteroid, params, u, config.moment_convention);
          },
          config.dt);
    } catch (const CollisionError&) {
      log.summary.termination = Termination::Collision;
      break;
    } catch (const DynamicsError&) {
      log.summary.termination = Termination::NonFinite;
      break;
    }
    if (!state.position.allFinite() || !state.velocity.allFinite() ||
        !state.attitude.allFinite() || !state.angular_velocity.allFinite()) {
      log.summary.termination = Termination::NonFinite;
      break;
    }
  }

  double uf_int = 0.0;
  double um_int = 0.0;
  for (const auto& r : log.records) {
    uf_int += r.control_force.norm() * config.dt;
    um_int += r.control_moment.norm() * config.dt;
  }
  log.summary.force_effort = uf_int;
  log.summary.moment_effort = um_int;
  if (!log.records.empty()) {
    log.summary.final_position_error = log.records.back().e_x.norm();
    log.summary.final_attitude_error = log.records.back().psi;
  }
  return log;
}

TrajectoryLog run_scenario(const ScenarioConfig& config) {
  const AsteroidModel asteroid = build_asteroid(config);
  const DumbbellParams params = DumbbellParams::symmetric(
      config.m1, config.m2, config.separation, config.sphere_radius);
  const ControlGains gains =
      config.gains.value_or(select_gains(params, config.zeta, config.wn_translation,
                                         config.wn_attitude));

  const CommandFn command = [&asteroid, guidance = config.guidance](double t) {
    return command_at(t, guidance, asteroid);
  };

  SpacecraftState state;
  state.time = 0.0;
  state.position = config.initial_position;
  state.attitude = config.initial_attitude;
  const TrajectoryCommand cmd0 = command(0.0);
  state.velocity = config.initial_velocity.value_or(cmd0.velocity);
  state.angular_velocity = config.initial_angular_velocity.value_or(
      Eigen::Vector3d(state.attitude.transpose() * cmd0.attitude * cmd0.angular_velocity));

  TrajectoryLog log = run_loop(config, asteroid, params, gains, state, command);
  if (!config.csv_path.empty()) export_csv(log, config.csv_path);
  if (!config.json_path.empty()) export_json(log, config.json_path);
  return log;
}

namespace {

const char* kCsvHeader =
    "t,x0,x1,x2,v0,v1,v2,"
    "R00,R01,R02,R10,R11,R12,R20,R21,R22,"
    "w0,w1,w2,xd0,xd1,xd2,psi,"
    "ex0,ex1,ex2,ev0,ev1,ev2,eR0,eR1,eR2,eW0,eW1,eW2,"
    "uf0,uf1,uf2,um0,um1,um2,altitude,potential,laplacian,phase";

void append_vec(std::string& out, const Eigen::Vector3d& v) {
  for (int i = 0; i < 3; ++i) {
    out += ',';
    out += format_double(v[i]);
  }
}

}  // namespace

std::string csv_string(const TrajectoryLog& log) {
  std::string out;
  out += "# schema 1\n";
  out += "# termination " + to_string(log.summary.termination) + "\n";
  out += "# phase_switch_index " + std::to_string(log.summary.phase_switch_index) + "\n";
  out += "# force_effort " + format_double(log.summary.force_effort) + "\n";
  out += "# moment_effort " + format_double(log.summary.moment_effort) + "\n";
  out += "# final_position_error " + format_double(log.summary.final_position_error) + "\n";
  out += "# final_attitude_error " + format_double(log.summary.final_attitude_error) + "\n";
  out += kCsvHeader;
  out += '\n';
  for (const auto& r : log.records) {
    out += format_double(r.t);
    append_vec(out, r.position);
    append_vec(out, r.velocity);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out += ',';
        out += format_double(r.attitude(i, j));
      }
    }
    append_vec(out, r.angular_velocity);
    append_vec(out, r.desired_position);
    out += ',';
    out += format_double(r.psi);
    append_vec(out, r.e_x);
    append_vec(out, r.e_v);
    append_vec(out, r.e_R);
    append_vec(out, r.e_Omega);
    append_vec(out, r.control_force);
    append_vec(out, r.control_moment);
    out += ',';
    out += format_double(r.altitude);
    out += ',';
    out += format_double(r.potential);
    out += ',';
    out += format_double(r.laplacian);
    out += ',';
    out += std::to_string(r.phase);
    out += '\n';
  }
  return out;
}

void export_csv(const TrajectoryLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << csv_string(log);
  if (!out) throw ConfigError("write failed: " + path);
}

TrajectoryLog import_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open log file: " + path);
  TrajectoryLog log;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "termination") {
        std::string v;
        ss >> v;
        log.summary.termination = termination_from_string(v);
      } else if (key == "phase_switch_index") {
        ss >> log.summary.phase_switch_index;
      } else if (key == "force_effort") {
        ss >> log.summary.force_effort;
      } else if (key == "moment_effort") {
        ss >> log.summary.moment_effort;
      } else if (key == "final_position_error") {
        ss >> log.summary.final_position_error;
      } else if (key == "final_attitude_error") {
        ss >> log.summary.final_attitude_error;
      }
      continue;
    }
    if (!saw_header) {
      if (line != kCsvHeader) throw ConfigError(path + ": unexpected CSV header");
      saw_header = true;
      continue;
    }
    std::vector<double> f;
    f.reserve(45);
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(std::strtod(tok.c_str(), nullptr));
    if (f.size() != 45) throw ConfigError(path + ": malformed record row");
    LogRecord r;
    std::size_t i = 0;
    r.t = f[i++];
    for (int k = 0; k < 3; ++k) r.position[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.velocity[k] = f[i++];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.attitude(a, b) = f[i++];
    for (int k = 0; k < 3; ++k) r.angular_velocity[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.desired_position[k] = f[i++];
    r.psi = f[i++];
    for (int k = 0; k < 3; ++k) r.e_x[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.e_v[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.e_R[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.e_Omega[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.control_force[k] = f[i++];
    for (int k = 0; k < 3; ++k) r.control_moment[k] = f[i++];
    r.altitude = f[i++];
    r.potential = f[i++];
    r.laplacian = f[i++];
    r.phase = static_cast<int>(f[i++]);
    log.records.push_back(r);
  }
  if (!saw_header) throw ConfigError(path + ": missing CSV header");
  return log;
}

namespace {

json vec_to_json(const Eigen::Vector3d& v) { return json{v[0], v[1], v[2]}; }

Eigen::Vector3d vec_from_json(const json& j) {
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void export_json(const TrajectoryLog& log, const std::string& path) {
  json j;
  j["schema_version"] = 1;
  j["summary"] = {
      {"termination", to_string(log.summary.termination)},
      {"phase_switch_index", log.summary.phase_switch_index},
      {"force_effort", log.summary.force_effort},
      {"moment_effort", log.summary.moment_effort},
      {"final_position_error", log.summary.final_position_error},
      {"final_attitude_error", log.summary.final_attitude_error},
  };
  json records = json::array();
  for (const auto& r : log.records) {
    json row;
    row["t"] = r.t;
    row["x"] = vec_to_json(r.position);
    row["v"] = vec_to_json(r.velocity);
    json rot = json::array();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) rot.push_back(r.attitude(a, b));
    row["R"] = rot;
    row["w"] = vec_to_json(r.angular_velocity);
    row["xd"] = vec_to_json(r.desired_position);
    row["psi"] = r.psi;
    row["e_x"] = vec_to_json(r.e_x);
    row["e_v"] = vec_to_json(r.e_v);
    row["e_R"] = vec_to_json(r.e_R);
    row["e_W"] = vec_to_json(r.e_Omega);
    row["u_f"] = vec_to_json(r.control_force);
    row["u_m"] = vec_to_json(r.control_moment);
    row["altitude"] = r.altitude;
    row["potential"] = r.potential;
    row["laplacian"] = r.laplacian;
    row["phase"] = r.phase;
    records.push_back(std::move(row));
  }
  j["records"] = std::move(records);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

TrajectoryLog import_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open log file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (j.value("schema_version", 0) != 1) {
    throw ConfigError(path + ": unsupported schema version");
  }
  TrajectoryLog log;
  const json& s = j["summary"];
  log.summary.termination = termination_from_string(s["termination"].get<std::string>());
  log.summary.phase_switch_index = s["phase_switch_index"].get<long>();
  log.summary.force_effort = s["force_effort"].get<double>();
  log.summary.moment_effort = s["moment_effort"].get<double>();
  log.summary.final_position_error = s["final_position_error"].get<double>();
  log.summary.final_attitude_error = s["final_attitude_error"].get<double>();
  for (const auto& row : j["records"]) {
    LogRecord r;
    r.t = row["t"].get<double>();
    r.position = vec_from_json(row["x"]);
    r.velocity = vec_from_json(row["v"]);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.attitude(a, b) = row["R"][a * 3 + b].get<double>();
    r.angular_velocity = vec_from_json(row["w"]);
    r.desired_position = vec_from_json(row["xd"]);
    r.psi = row["psi"].get<double>();
    r.e_x = vec_from_json(row["e_x"]);
    r.e_v = vec_from_json(row["e_v"]);
    r.e_R = vec_from_json(row["e_R"]);
    r.e_Omega = vec_from_json(row["e_W"]);
    r.control_force = vec_from_json(row["u_f"]);
    r.control_moment = vec_from_json(row["u_m"]);
    r.altitude = row["altitude"].get<double>();
    r.potential = row["potential"].get<double>();
    r.laplacian = row["laplacian"].get<double>();
    r.phase = row["phase"].get<int>();
    log.records.push_back(r);
  }
  return log;
}

}  // namespace astro
