#pragma once

// Experiment configuration and the command implementations behind the
// `spinsq` executable. Every command is deterministic given its config.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinsq/calibration.hpp"
#include "spinsq/metrics.hpp"
#include "spinsq/smp.hpp"

namespace spinsq::cli {

/// Invalid configuration or usage; the executable exits with code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kConfigEnvVar = "SPINSQ_CONFIG";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Unset stop/step give `points` samples over one quadrupolar period.
struct TimeGridConfig {
  double start_us = 0.0;
  std::optional<double> stop_us;
  std::optional<double> step_us;
  int points = 45;
};

struct ThermalConfig {
  double nu_l_hz = 65.598e6;
  std::optional<double> temperature_k = 299.15;
  std::optional<double> partition_dim;  // default 2I+1
};

struct WignerConfig {
  int n_theta = 64;
  int n_phi = 128;
  std::vector<int> k_indices{0, 4, 17, 40, 44};
};

struct SmpSettings {
  int n_segments = 16;
  int eta = 2;
  std::optional<double> t_smp_us;  // default 2/nu_Q
  int restarts = 8;
  std::uint64_t seed = 20140417;
  int rounds = 5;
  long evaluations_per_round = 4000;
  double initial_step = 0.1;
  double stop_fidelity = 0.995;
  double threshold = 0.99;
  EnvelopeSpec envelope{};
  double amplitude_scale_hz = 10e3;
  double amplitude_cap_hz = 50e3;
};

struct PulseErrorConfig {
  double nu_1_hz = 19e3;
  std::optional<double> nu_q_hz;  // default: top-level nu_q_hz
  double phase_rad = 0.0;
  double duration_us = 2.2;
};

struct ErrorsConfig {
  double temp_accuracy_k = 0.1;
  double t_ref_k = 299.15;
  double slope_hz_per_k = -250.0;
  DelayTable delays{};
};

struct ExperimentConfig {
  int spin_two_i = 7;
  double nu_q_hz = 7580.0;
  double theta0_rad = 1.5707963267948966;
  double phi0_rad = 3.141592653589793;
  TimeGridConfig time{};
  ThermalConfig thermal{};
  WignerConfig wigner{};
  SmpSettings smp{};
  PulseErrorConfig pulse_error{};
  ErrorsConfig errors{};
  double recycle_delay_s = 3.5;  // metadata only; relaxation is not simulated
  std::filesystem::path output_dir = ".";
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
ExperimentConfig config_from_json(const nlohmann::json& json);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);

std::vector<double> time_grid(const ExperimentConfig& config);
SmpConfig smp_config(const ExperimentConfig& config);

nlohmann::json program_to_json(const PulseProgram& program, const ExperimentConfig& config, std::uint64_t seed);
/// Inverse of program_to_json; throws ConfigError on malformed input.
PulseProgram program_from_json(const nlohmann::json& json);

/// Each command writes its files into config.output_dir and returns a JSON
/// summary (printed by the executable).
nlohmann::json cmd_thermal(const ExperimentConfig& config);
nlohmann::json cmd_trajectory(const ExperimentConfig& config);
nlohmann::json cmd_wigner(const ExperimentConfig& config);
nlohmann::json cmd_smp(const ExperimentConfig& config);
nlohmann::json cmd_pulse_error(const ExperimentConfig& config);
nlohmann::json cmd_errors(const ExperimentConfig& config);

/// Shared by cmd_trajectory and cmd_wigner.
std::vector<Operator> default_trajectory_states(const ExperimentConfig& config);

/// JSON text with numbers rounded to 9 significant digits.
std::string dump_json(const nlohmann::json& json);

}  // namespace spinsq::cli
