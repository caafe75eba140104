// spinsq: spin-7/2 squeezing pipeline driver.
//
//   spinsq [--config cfg.json] [--out dir] <command> [overrides]
//
// Commands: thermal, trajectory, wigner, smp, pulse-error, errors.
// The config path falls back to $SPINSQ_CONFIG; without either the built-in
// defaults are used.

#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "spinsq/experiment.hpp"

namespace {

using spinsq::cli::ExperimentConfig;

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> nu_q;
  std::optional<int> spin_two_i;
  std::optional<double> temperature;
  std::optional<double> nu_l;
  std::optional<double> partition_dim;
  std::optional<double> time_step_us;
  std::optional<double> time_stop_us;
  std::optional<int> points;
  std::vector<int> k;
  bool k_given = false;
  bool no_k = false;
  std::optional<int> n_theta;
  std::optional<int> n_phi;
  std::optional<int> segments;
  std::optional<int> eta;
  std::optional<int> restarts;
  std::optional<double> t_smp_us;
  bool paper_scale = false;
  std::optional<double> nu_1;
  std::optional<double> phase;
  std::optional<double> pulse_us;
  std::optional<double> temp_accuracy;
};

void apply(const Overrides& o, ExperimentConfig& c) {
  if (o.out) c.output_dir = *o.out;
  if (o.seed) c.smp.seed = *o.seed;
  if (o.nu_q) c.nu_q_hz = *o.nu_q;
  if (o.spin_two_i) c.spin_two_i = *o.spin_two_i;
  if (o.temperature) c.thermal.temperature_k = *o.temperature;
  if (o.nu_l) c.thermal.nu_l_hz = *o.nu_l;
  if (o.partition_dim) c.thermal.partition_dim = *o.partition_dim;
  if (o.time_step_us) c.time.step_us = *o.time_step_us;
  if (o.time_stop_us) c.time.stop_us = *o.time_stop_us;
  if (o.points) c.time.points = *o.points;
  if (o.k_given) c.wigner.k_indices = o.k;
  if (o.no_k) c.wigner.k_indices.clear();
  if (o.n_theta) c.wigner.n_theta = *o.n_theta;
  if (o.n_phi) c.wigner.n_phi = *o.n_phi;
  if (o.paper_scale) {
    // Paper-scale program: 256 segments, 4 variants. Not tuned for speed.
    c.smp.n_segments = 256;
    c.smp.eta = 4;
  }
  if (o.segments) c.smp.n_segments = *o.segments;
  if (o.eta) c.smp.eta = *o.eta;
  if (o.restarts) c.smp.restarts = *o.restarts;
  if (o.t_smp_us) c.smp.t_smp_us = *o.t_smp_us;
  if (o.nu_1) c.pulse_error.nu_1_hz = *o.nu_1;
  if (o.phase) c.pulse_error.phase_rad = *o.phase;
  if (o.pulse_us) c.pulse_error.duration_us = *o.pulse_us;
  if (o.temp_accuracy) c.errors.temp_accuracy_k = *o.temp_accuracy;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace spinsq::cli;

  CLI::App app{"Spin-7/2 squeezing simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "JSON config file (default: $SPINSQ_CONFIG)");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--seed", o.seed, "SMP optimizer seed");
  app.add_option("--nu-q", o.nu_q, "Quadrupolar frequency nu_Q (Hz)");
  app.add_option("--spin-two-i", o.spin_two_i, "Twice the spin quantum number");
  app.add_option("--temperature", o.temperature, "Sample temperature (K)");
  app.add_option("--nu-l", o.nu_l, "Larmor frequency (Hz)");
  app.add_option("--partition-dim", o.partition_dim, "Partition function Z (default 2I+1)");
  app.add_option("--time-step-us", o.time_step_us, "Trajectory step (us)");
  app.add_option("--time-stop-us", o.time_stop_us, "Trajectory end (us)");
  app.add_option("--points", o.points, "Trajectory points when the step is not given");
  auto* k_opt = app.add_option("--k", o.k, "Wigner time indices")->expected(1, -1);
  app.add_flag("--no-k", o.no_k, "Write no Wigner maps");
  app.add_option("--n-theta", o.n_theta, "Wigner grid, theta nodes");
  app.add_option("--n-phi", o.n_phi, "Wigner grid, phi nodes");
  app.add_option("--segments", o.segments, "SMP segments per variant");
  app.add_option("--eta", o.eta, "SMP variants");
  app.add_option("--restarts", o.restarts, "SMP optimizer restarts");
  app.add_option("--t-smp-us", o.t_smp_us, "SMP duration (us)");
  app.add_flag("--paper-scale", o.paper_scale, "SMP with 256 segments and 4 variants");
  app.add_option("--nu-1", o.nu_1, "Tomography pulse nutation frequency (Hz)");
  app.add_option("--phase", o.phase, "Tomography pulse phase (rad)");
  app.add_option("--pulse-us", o.pulse_us, "Tomography pulse length (us)");
  app.add_option("--temp-accuracy", o.temp_accuracy, "Thermometer accuracy (K)");

  app.add_subcommand("thermal", "Thermal polarization and deviation matrix");
  app.add_subcommand("trajectory", "Squeezing parameter and angle over the time grid");
  app.add_subcommand("wigner", "Wigner maps at selected time indices");
  app.add_subcommand("smp", "Optimize a modulated pulse preparing the coherent state");
  app.add_subcommand("pulse-error", "Fidelity of a finite tomography pulse");
  app.add_subcommand("errors", "Error budget report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  o.k_given = k_opt->count() > 0;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv(kConfigEnvVar)) config_path = env;
    }
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    apply(o, config);

    nlohmann::json summary;
    if (command == "thermal") summary = cmd_thermal(config);
    else if (command == "trajectory") summary = cmd_trajectory(config);
    else if (command == "wigner") summary = cmd_wigner(config);
    else if (command == "smp") summary = cmd_smp(config);
    else if (command == "pulse-error") summary = cmd_pulse_error(config);
    else summary = cmd_errors(config);
    std::cout << dump_json(summary);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "spinsq " << command << ": " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const spinsq::NumericalInconsistency& e) {
    std::cerr << "spinsq " << command << ": numerical inconsistency: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "spinsq " << command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}
