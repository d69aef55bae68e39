#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "astro/controller.hpp"
#include "astro/guidance.hpp"
#include "astro/rigid_body.hpp"

namespace astro {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full scenario description, parsed from JSON with unit-carrying values and
/// converted to SI at load time.
struct ScenarioConfig {
  std::string mesh_path;
  double density = 0.0;            // kg/m^3
  double gravitational_constant = 6.67430e-11;
  double rotation_period = 0.0;    // s; 0 = non-rotating
  double spin_rate = 0.0;          // rad/s, derived

  double m1 = 0.0;
  double m2 = 0.0;
  double separation = 0.0;         // m
  double sphere_radius = 0.5;      // m

  Eigen::Vector3d initial_position = Eigen::Vector3d::Zero();  // m, inertial
  Eigen::Matrix3d initial_attitude = Eigen::Matrix3d::Identity();
  std::optional<Eigen::Vector3d> initial_velocity;             // default: match command
  std::optional<Eigen::Vector3d> initial_angular_velocity;     // default: match command

  GuidanceConfig guidance;
  std::optional<ControlGains> gains;  // default: designed from the specs below
  double zeta = 1.0;
  double wn_translation = 0.05;   // rad/s
  double wn_attitude = 0.2;       // rad/s

  double dt = 1.0;                // s
  double t_final = 7200.0;        // s
  MomentConvention moment_convention = MomentConvention::BodyFrame;
  std::optional<double> surface_radius;  // m, terminal-command threshold

  std::string csv_path;
  std::string json_path;
  std::optional<long> seed;  // recorded only; the core is deterministic
};

ScenarioConfig load_config(const std::string& path);

enum class Termination { Completed, Collision, NonFinite, CommandBelowSurface };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct LogRecord {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();
  Eigen::Vector3d angular_velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d desired_position = Eigen::Vector3d::Zero();
  double psi = 0.0;
  Eigen::Vector3d e_x = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_v = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_R = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_Omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d control_force = Eigen::Vector3d::Zero();
  Eigen::Vector3d control_moment = Eigen::Vector3d::Zero();
  double altitude = 0.0;        // m, distance to nearest mesh vertex
  double potential = 0.0;       // field at the COM, asteroid frame
  double laplacian = 0.0;
  int phase = 1;
};

struct LogSummary {
  double final_position_error = 0.0;
  double final_attitude_error = 0.0;  // Psi
  double force_effort = 0.0;          // integral of |u_f| dt
  double moment_effort = 0.0;         // integral of |u_m| dt
  long phase_switch_index = -1;
  Termination termination = Termination::Completed;
};

struct TrajectoryLog {
  std::vector<LogRecord> records;
  LogSummary summary;
};

/// Provider of the command stream; run_scenario wires in the two-phase
/// guidance, tests may substitute their own.
using CommandFn = std::function<TrajectoryCommand(double)>;

AsteroidModel build_asteroid(const ScenarioConfig& config);

/// Deterministic guidance -> controller -> dynamics loop. One record per
/// step including the initial state; identical configs give identical logs.
TrajectoryLog run_scenario(const ScenarioConfig& config);

TrajectoryLog run_loop(const ScenarioConfig& config, const AsteroidModel& asteroid,
                       const DumbbellParams& params, const ControlGains& gains,
                       const SpacecraftState& initial_state, const CommandFn& command);

/// CSV with a fixed header and 17-significant-digit floats; the column order
/// is documented in the README.
void export_csv(const TrajectoryLog& log, const std::string& path);
TrajectoryLog import_csv(const std::string& path);

void export_json(const TrajectoryLog& log, const std::string& path);
TrajectoryLog import_json(const std::string& path);

std::string csv_string(const TrajectoryLog& log);

}  // namespace astro
