#include "spinsq/experiment.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "spinsq/dynamics.hpp"
#include "spinsq/format.hpp"
#include "spinsq/states.hpp"
#include "spinsq/wigner.hpp"

namespace spinsq::cli {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rounded so that ns -> s -> ns reproduces the written value.
double to_ns(double seconds) { return round_significant(seconds * 1e9); }

// Reads one JSON object section, rejecting unknown keys.
class SectionReader {
 public:
  SectionReader(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("config: '" + name_ + "' must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (v.is_null()) throw ConfigError("config: " + path(key) + " is required");
    convert(key, v, out);
  }

  template <class T>
  void get(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (v.is_null()) {
      out.reset();
      return;
    }
    T value{};
    convert(key, v, value);
    out = value;
  }

  const json* section(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("config: unknown key " + path(key.c_str()));
    }
  }

 private:
  std::string path(const char* key) const { return name_.empty() ? key : name_ + "." + key; }

  template <class T>
  void convert(const char* key, const json& v, T& out) const {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("config: " + path(key) + " must be a number");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("config: " + path(key) + " must be an integer");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("config: " + path(key) + " must be a string");
    }
    try {
      out = v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config: " + path(key) + ": " + e.what());
    }
  }

  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("config: " + message);
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("output directory " + dir.string() + " is not writable" + (ec ? ": " + ec.message() : ""));
  }
}

void write_output(const std::filesystem::path& path, std::string_view content) {
  try {
    write_file_atomic(path, content);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot write output: ") + e.what());
  }
}

json round_numbers(const json& j) {
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it);
    return out;
  }
  return j;
}

Operator initial_state(const ExperimentConfig& config) {
  return coherent_state(SpinSystem(config.spin_two_i), config.theta0_rad, config.phi0_rad).projector();
}

json constants_json() {
  return {{"hbar_j_s", constants::kHbar}, {"k_b_j_per_k", constants::kBoltzmann}, {"source", constants::kSource}};
}

}  // namespace

std::string dump_json(const json& j) { return round_numbers(j).dump(2) + "\n"; }

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  SectionReader top(j, "");
  top.get("spin_two_i", c.spin_two_i);
  top.get("nu_q_hz", c.nu_q_hz);
  top.get("theta0_rad", c.theta0_rad);
  top.get("phi0_rad", c.phi0_rad);
  top.get("recycle_delay_s", c.recycle_delay_s);
  std::string out_dir = c.output_dir.string();
  top.get("output_dir", out_dir);
  c.output_dir = out_dir;

  if (const json* s = top.section("time_grid")) {
    SectionReader r(*s, "time_grid");
    r.get("start_us", c.time.start_us);
    r.get("stop_us", c.time.stop_us);
    r.get("step_us", c.time.step_us);
    r.get("points", c.time.points);
    r.finish();
  }
  if (const json* s = top.section("thermal")) {
    SectionReader r(*s, "thermal");
    r.get("nu_l_hz", c.thermal.nu_l_hz);
    r.get("temperature_k", c.thermal.temperature_k);
    r.get("partition_dim", c.thermal.partition_dim);
    r.finish();
  }
  if (const json* s = top.section("wigner")) {
    SectionReader r(*s, "wigner");
    r.get("n_theta", c.wigner.n_theta);
    r.get("n_phi", c.wigner.n_phi);
    r.get("k_indices", c.wigner.k_indices);
    r.finish();
  }
  if (const json* s = top.section("smp")) {
    SectionReader r(*s, "smp");
    r.get("n_segments", c.smp.n_segments);
    r.get("eta", c.smp.eta);
    r.get("t_smp_us", c.smp.t_smp_us);
    r.get("restarts", c.smp.restarts);
    r.get("seed", c.smp.seed);
    r.get("rounds", c.smp.rounds);
    r.get("evaluations_per_round", c.smp.evaluations_per_round);
    r.get("initial_step", c.smp.initial_step);
    r.get("stop_fidelity", c.smp.stop_fidelity);
    r.get("threshold", c.smp.threshold);
    r.get("ramp_fraction", c.smp.envelope.ramp_fraction);
    r.get("sigma_fraction", c.smp.envelope.sigma_fraction);
    r.get("amplitude_scale_hz", c.smp.amplitude_scale_hz);
    r.get("amplitude_cap_hz", c.smp.amplitude_cap_hz);
    r.finish();
  }
  if (const json* s = top.section("pulse_error")) {
    SectionReader r(*s, "pulse_error");
    r.get("nu_1_hz", c.pulse_error.nu_1_hz);
    r.get("nu_q_hz", c.pulse_error.nu_q_hz);
    r.get("phase_rad", c.pulse_error.phase_rad);
    r.get("duration_us", c.pulse_error.duration_us);
    r.finish();
  }
  if (const json* s = top.section("errors")) {
    SectionReader r(*s, "errors");
    r.get("temp_accuracy_k", c.errors.temp_accuracy_k);
    r.get("t_ref_k", c.errors.t_ref_k);
    r.get("slope_hz_per_k", c.errors.slope_hz_per_k);
    if (const json* d = r.section("delays_ns")) {
      SectionReader dr(*d, "errors.delays_ns");
      double phase_set = to_ns(c.errors.delays.phase_set), gate_on = to_ns(c.errors.delays.gate_on),
             gate_off = to_ns(c.errors.delays.gate_off), sample = to_ns(c.errors.delays.acquisition_sample),
             freq = to_ns(c.errors.delays.frequency_change);
      dr.get("phase_set", phase_set);
      dr.get("gate_on", gate_on);
      dr.get("gate_off", gate_off);
      dr.get("acquisition_sample", sample);
      dr.get("frequency_change", freq);
      dr.finish();
      c.errors.delays = {phase_set / 1e9, gate_on / 1e9, gate_off / 1e9, sample / 1e9, freq / 1e9};
    }
    r.finish();
  }
  top.finish();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  auto opt = [](const auto& o) -> json { return o ? json(*o) : json(nullptr); };
  return {
      {"spin_two_i", c.spin_two_i},
      {"nu_q_hz", c.nu_q_hz},
      {"theta0_rad", c.theta0_rad},
      {"phi0_rad", c.phi0_rad},
      {"recycle_delay_s", c.recycle_delay_s},
      {"output_dir", c.output_dir.string()},
      {"time_grid",
       {{"start_us", c.time.start_us}, {"stop_us", opt(c.time.stop_us)}, {"step_us", opt(c.time.step_us)},
        {"points", c.time.points}}},
      {"thermal",
       {{"nu_l_hz", c.thermal.nu_l_hz},
        {"temperature_k", opt(c.thermal.temperature_k)},
        {"partition_dim", opt(c.thermal.partition_dim)}}},
      {"wigner", {{"n_theta", c.wigner.n_theta}, {"n_phi", c.wigner.n_phi}, {"k_indices", c.wigner.k_indices}}},
      {"smp",
       {{"n_segments", c.smp.n_segments},
        {"eta", c.smp.eta},
        {"t_smp_us", opt(c.smp.t_smp_us)},
        {"restarts", c.smp.restarts},
        {"seed", c.smp.seed},
        {"rounds", c.smp.rounds},
        {"evaluations_per_round", c.smp.evaluations_per_round},
        {"initial_step", c.smp.initial_step},
        {"stop_fidelity", c.smp.stop_fidelity},
        {"threshold", c.smp.threshold},
        {"ramp_fraction", c.smp.envelope.ramp_fraction},
        {"sigma_fraction", c.smp.envelope.sigma_fraction},
        {"amplitude_scale_hz", c.smp.amplitude_scale_hz},
        {"amplitude_cap_hz", c.smp.amplitude_cap_hz}}},
      {"pulse_error",
       {{"nu_1_hz", c.pulse_error.nu_1_hz},
        {"nu_q_hz", opt(c.pulse_error.nu_q_hz)},
        {"phase_rad", c.pulse_error.phase_rad},
        {"duration_us", c.pulse_error.duration_us}}},
      {"errors",
       {{"temp_accuracy_k", c.errors.temp_accuracy_k},
        {"t_ref_k", c.errors.t_ref_k},
        {"slope_hz_per_k", c.errors.slope_hz_per_k},
        {"delays_ns",
         {{"phase_set", to_ns(c.errors.delays.phase_set)},
          {"gate_on", to_ns(c.errors.delays.gate_on)},
          {"gate_off", to_ns(c.errors.delays.gate_off)},
          {"acquisition_sample", to_ns(c.errors.delays.acquisition_sample)},
          {"frequency_change", to_ns(c.errors.delays.frequency_change)}}}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void validate(const ExperimentConfig& c) {
  require(c.spin_two_i >= 1 && c.spin_two_i <= kMaxTwoI, "spin_two_i must lie in [1, 14]");
  require(c.nu_q_hz > 0.0 && std::isfinite(c.nu_q_hz), "nu_q_hz must be positive");
  require(std::isfinite(c.theta0_rad) && std::isfinite(c.phi0_rad), "initial angles must be finite");
  require(c.recycle_delay_s >= 0.0, "recycle_delay_s must be non-negative");
  require(c.time.points >= 2, "time_grid.points must be at least 2");
  if (c.time.step_us) require(*c.time.step_us > 0.0, "time_grid.step_us must be positive");
  if (c.time.stop_us) require(*c.time.stop_us >= c.time.start_us, "time_grid.stop_us precedes start_us");
  require(c.time.start_us >= 0.0, "time_grid.start_us must be non-negative");
  require(c.thermal.temperature_k.has_value(), "thermal.temperature_k is required");
  require(*c.thermal.temperature_k > 0.0, "thermal.temperature_k must be positive");
  require(c.thermal.nu_l_hz > 0.0, "thermal.nu_l_hz must be positive");
  if (c.thermal.partition_dim) require(*c.thermal.partition_dim > 0.0, "thermal.partition_dim must be positive");
  require(c.wigner.n_theta >= 1 && c.wigner.n_phi >= 1, "wigner grid sizes must be positive");
  require(c.smp.n_segments >= 1, "smp.n_segments must be at least 1");
  require(c.smp.eta >= 1, "smp.eta must be at least 1");
  require(c.smp.restarts >= 1, "smp.restarts must be at least 1");
  require(c.smp.rounds >= 1, "smp.rounds must be at least 1");
  require(c.smp.evaluations_per_round >= 1, "smp.evaluations_per_round must be positive");
  require(c.smp.initial_step > 0.0, "smp.initial_step must be positive");
  if (c.smp.t_smp_us) require(*c.smp.t_smp_us > 0.0, "smp.t_smp_us must be positive");
  require(c.smp.amplitude_scale_hz > 0.0 && c.smp.amplitude_cap_hz >= c.smp.amplitude_scale_hz,
          "smp amplitudes need 0 < amplitude_scale_hz <= amplitude_cap_hz");
  try {
    validate(c.smp.envelope);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: smp ") + e.what());
  }
  require(c.pulse_error.nu_1_hz >= 0.0, "pulse_error.nu_1_hz must be non-negative");
  require(c.pulse_error.duration_us > 0.0, "pulse_error.duration_us must be positive");
  require(c.errors.temp_accuracy_k >= 0.0, "errors.temp_accuracy_k must be non-negative");
  require(c.errors.t_ref_k > 0.0, "errors.t_ref_k must be positive");
  for (DelayKind kind : kAllDelayKinds) {
    require(c.errors.delays[kind] >= 0.0, "errors.delays_ns entries must be non-negative");
  }
}

std::vector<double> time_grid(const ExperimentConfig& c) {
  const double start = c.time.start_us * 1e-6;
  const int points = c.time.points;
  if (c.time.stop_us && c.time.step_us) return uniform_time_grid(start, *c.time.stop_us * 1e-6, *c.time.step_us * 1e-6);
  double step = 0.0;
  if (c.time.step_us) {
    step = *c.time.step_us * 1e-6;
  } else {
    const double stop = c.time.stop_us ? *c.time.stop_us * 1e-6 : start + 1.0 / c.nu_q_hz;
    step = (stop - start) / (points - 1);
  }
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) times[static_cast<std::size_t>(k)] = start + step * k;
  if (!c.time.stop_us && !c.time.step_us && c.time.start_us == 0.0) {
    // Same arithmetic as period_time_grid, so the last point is exactly 1/nu_Q.
    return period_time_grid(c.nu_q_hz, points);
  }
  return times;
}

SmpConfig smp_config(const ExperimentConfig& c) {
  SmpConfig s = desk_scale_config(c.nu_q_hz);
  s.context.spin = SpinSystem(c.spin_two_i);
  s.context.n_segments = c.smp.n_segments;
  s.context.eta = c.smp.eta;
  s.context.t_smp = c.smp.t_smp_us ? *c.smp.t_smp_us * 1e-6 : 2.0 / c.nu_q_hz;
  s.context.envelope = c.smp.envelope;
  s.context.amplitude_scale = kTwoPi * c.smp.amplitude_scale_hz;
  s.context.amplitude_cap = kTwoPi * c.smp.amplitude_cap_hz;
  s.restarts = c.smp.restarts;
  s.seed = c.smp.seed;
  s.rounds = c.smp.rounds;
  s.evaluations_per_round = c.smp.evaluations_per_round;
  s.initial_step = c.smp.initial_step;
  s.stop_fidelity = c.smp.stop_fidelity;
  s.threshold = c.smp.threshold;
  return s;
}

json program_to_json(const PulseProgram& program, const ExperimentConfig& config, std::uint64_t seed) {
  json variants = json::array();
  for (const PulseTrain& train : program.variants) {
    json segs = json::array();
    for (const PulseSegment& s : train) {
      segs.push_back({{"amplitude_rad_s", s.amplitude}, {"phase_rad", s.phase}, {"duration_s", s.duration}});
    }
    variants.push_back(std::move(segs));
  }
  return {{"spin_two_i", config.spin_two_i},
          {"nu_q_hz", config.nu_q_hz},
          {"eta", program.eta()},
          {"t_smp_s", program.total_duration()},
          {"envelope",
           {{"ramp_fraction", program.envelope.ramp_fraction}, {"sigma_fraction", program.envelope.sigma_fraction}}},
          {"variants", std::move(variants)},
          {"seed", seed}};
}

PulseProgram program_from_json(const json& j) {
  try {
    PulseProgram program;
    program.envelope.ramp_fraction = j.at("envelope").at("ramp_fraction").get<double>();
    program.envelope.sigma_fraction = j.at("envelope").at("sigma_fraction").get<double>();
    for (const json& train : j.at("variants")) {
      PulseTrain t;
      for (const json& s : train) {
        t.push_back({s.at("amplitude_rad_s").get<double>(), s.at("phase_rad").get<double>(),
                     s.at("duration_s").get<double>()});
      }
      program.variants.push_back(std::move(t));
    }
    if (program.eta() != j.at("eta").get<int>()) throw ConfigError("pulse program: eta does not match variants");
    validate(program);
    return program;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("pulse program: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Operator> default_trajectory_states(const ExperimentConfig& config) {
  const std::vector<double> times = time_grid(config);
  return oat_trajectory(initial_state(config), kTwoPi * config.nu_q_hz, times);
}

json cmd_thermal(const ExperimentConfig& config) {
  validate(config);
  const SpinSystem spin(config.spin_two_i);
  const double z = config.thermal.partition_dim.value_or(spin.dim());
  const double epsilon = polarization({kTwoPi * config.thermal.nu_l_hz, *config.thermal.temperature_k, z});
  const Operator rho0 = thermal_deviation(spin);
  json diagonal = json::array();
  for (int i = 0; i < spin.dim(); ++i) diagonal.push_back(rho0(i, i).real());
  json out = {{"command", "thermal"},
              {"spin_two_i", config.spin_two_i},
              {"larmor_frequency_hz", config.thermal.nu_l_hz},
              {"larmor_frequency_rad_s", kTwoPi * config.thermal.nu_l_hz},
              {"temperature_k", *config.thermal.temperature_k},
              {"partition_dim", z},
              {"epsilon", epsilon},
              {"constants", constants_json()},
              {"deviation_matrix",
               {{"operator", "Iz"}, {"basis", "descending m"}, {"diagonal", diagonal}, {"traceless", true}}}};
  ensure_output_dir(config.output_dir);
  write_output(config.output_dir / "thermal.json", dump_json(out));
  return out;
}

json cmd_trajectory(const ExperimentConfig& config) {
  validate(config);
  const std::vector<double> times = time_grid(config);
  const std::vector<Operator> states = default_trajectory_states(config);
  const std::vector<SqueezingReport> reports = report_trajectory(states, times);

  std::ostringstream csv;
  csv << "tau_us,A,B,C,xi,alpha_rad\n";
  std::size_t min_index = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const SqueezingReport& r = reports[i];
    csv << format_number(r.time * 1e6) << ',' << format_number(r.a) << ',' << format_number(r.b) << ','
        << format_number(r.c) << ',' << format_number(r.xi) << ',' << format_number(r.alpha) << '\n';
    if (r.xi < reports[min_index].xi) min_index = i;
  }
  ensure_output_dir(config.output_dir);
  write_output(config.output_dir / "trajectory.csv", csv.str());
  return {{"command", "trajectory"},
          {"file", (config.output_dir / "trajectory.csv").string()},
          {"rows", reports.size()},
          {"xi_min", reports.empty() ? 0.0 : reports[min_index].xi},
          {"xi_min_index", min_index},
          {"xi_min_tau_us", reports.empty() ? 0.0 : reports[min_index].time * 1e6}};
}

json cmd_wigner(const ExperimentConfig& config) {
  validate(config);
  const std::vector<double> times = time_grid(config);
  for (int k : config.wigner.k_indices) {
    if (k < 0 || static_cast<std::size_t>(k) >= times.size()) {
      throw ConfigError("wigner: time index " + std::to_string(k) + " outside the grid [0, " +
                        std::to_string(times.size() - 1) + "]");
    }
  }
  json files = json::array();
  if (config.wigner.k_indices.empty()) return {{"command", "wigner"}, {"files", files}};

  const Operator rho0 = initial_state(config);
  const Operator h = oat_hamiltonian(SpinSystem(config.spin_two_i), kTwoPi * config.nu_q_hz);
  ensure_output_dir(config.output_dir);
  for (int k : config.wigner.k_indices) {
    const double tau = times[static_cast<std::size_t>(k)];
    const WignerGrid grid = wigner_map(evolve(rho0, propagator(h, tau)), config.wigner.n_theta, config.wigner.n_phi);
    std::ostringstream csv;
    csv << "theta_rad,phi_rad,w\n";
    for (int i = 0; i < grid.n_theta(); ++i) {
      for (int jj = 0; jj < grid.n_phi(); ++jj) {
        csv << format_number(grid.thetas()[static_cast<std::size_t>(i)]) << ','
            << format_number(grid.phis()[static_cast<std::size_t>(jj)]) << ',' << format_number(grid.value(i, jj))
            << '\n';
      }
    }
    const std::filesystem::path path = config.output_dir / ("wigner_k" + std::to_string(k) + ".csv");
    write_output(path, csv.str());
    const auto [ai, aj] = grid.argmax();
    files.push_back({{"k", k},
                     {"tau_us", tau * 1e6},
                     {"file", path.string()},
                     {"integral", sphere_integral(grid)},
                     {"argmax_theta_rad", grid.thetas()[static_cast<std::size_t>(ai)]},
                     {"argmax_phi_rad", grid.phis()[static_cast<std::size_t>(aj)]}});
  }
  return {{"command", "wigner"}, {"files", files}};
}

json cmd_smp(const ExperimentConfig& config) {
  validate(config);
  const SmpConfig smp = smp_config(config);
  const Operator target = initial_state(config);
  const SmpResult result = optimize_smp(target, smp);

  const json program = program_to_json(result.program, config, result.seed);
  json report = {{"command", "smp"},
                 {"achieved_fidelity", result.achieved_fidelity},
                 {"threshold", smp.threshold},
                 {"below_threshold", result.below_threshold},
                 {"iterations", result.iterations},
                 {"evaluations", result.evaluations},
                 {"seed", result.seed},
                 {"restarts", smp.restarts},
                 {"best_restart", result.best_restart},
                 {"restart_fidelities", result.restart_fidelities},
                 {"n_segments", smp.context.n_segments},
                 {"eta", smp.context.eta},
                 {"t_smp_s", smp.context.t_smp},
                 {"nu_q_hz", config.nu_q_hz},
                 {"target", {{"theta_rad", config.theta0_rad}, {"phi_rad", config.phi0_rad}}},
                 {"fidelity_measure", "normalized overlap with the traceless part of the target"}};
  ensure_output_dir(config.output_dir);
  write_output(config.output_dir / "pulse_program.json", dump_json(program));
  write_output(config.output_dir / "smp_report.json", dump_json(report));
  return report;
}

json cmd_pulse_error(const ExperimentConfig& config) {
  validate(config);
  const double nu_q = config.pulse_error.nu_q_hz.value_or(config.nu_q_hz);
  const double t = config.pulse_error.duration_us * 1e-6;
  const PulseErrorReport r = pulse_error_report(SpinSystem(config.spin_two_i), kTwoPi * config.pulse_error.nu_1_hz,
                                                kTwoPi * nu_q, config.pulse_error.phase_rad, t);
  json out = {{"command", "pulse-error"},
              {"spin_two_i", config.spin_two_i},
              {"nu_1_hz", config.pulse_error.nu_1_hz},
              {"nu_q_hz", nu_q},
              {"phase_rad", config.pulse_error.phase_rad},
              {"duration_s", t},
              {"fidelity", r.fidelity},
              {"error_percent", r.error_percent}};
  ensure_output_dir(config.output_dir);
  write_output(config.output_dir / "pulse_error.json", dump_json(out));
  return out;
}

json cmd_errors(const ExperimentConfig& config) {
  validate(config);
  const double nu_q = config.pulse_error.nu_q_hz.value_or(config.nu_q_hz);
  const double t = config.pulse_error.duration_us * 1e-6;
  const PulseErrorReport pulse = pulse_error_report(
      SpinSystem(config.spin_two_i), kTwoPi * config.pulse_error.nu_1_hz, kTwoPi * nu_q, config.pulse_error.phase_rad, t);

  const TempModel model{config.nu_q_hz, config.errors.t_ref_k, config.errors.slope_hz_per_k};
  const double spread = nu_q_uncertainty(model, config.errors.temp_accuracy_k);

  const std::vector<DelayEvent> one_pulse = single_pulse_events();
  std::vector<DelayEvent> with_switch = one_pulse;
  with_switch.push_back({DelayKind::FrequencyChange, 1});
  json per_kind = json::object();
  for (DelayKind kind : kAllDelayKinds) per_kind[std::string(to_string(kind))] = config.errors.delays[kind];

  json out = {
      {"command", "errors"},
      {"pulse_error",
       {{"nu_1_hz", config.pulse_error.nu_1_hz},
        {"nu_q_hz", nu_q},
        {"phase_rad", config.pulse_error.phase_rad},
        {"duration_s", t},
        {"fidelity", pulse.fidelity},
        {"error_percent", pulse.error_percent}}},
      {"temperature",
       {{"nu_q_hz", nu_q_at(model, model.t_ref)},
        {"temp_accuracy_k", config.errors.temp_accuracy_k},
        {"slope_hz_per_k", model.slope},
        {"nu_q_uncertainty_hz", spread},
        {"nu_q_low_hz", nu_q_at(model, model.t_ref) - spread},
        {"nu_q_high_hz", nu_q_at(model, model.t_ref) + spread}}},
      {"hidden_delays",
       {{"per_kind_s", per_kind},
        {"single_pulse_s", hidden_delay_budget(one_pulse, config.errors.delays)},
        {"single_pulse_with_frequency_change_s", hidden_delay_budget(with_switch, config.errors.delays)},
        {"upper_estimate", true}}},
      {"recycle_delay_s", config.recycle_delay_s}};
  ensure_output_dir(config.output_dir);
  write_output(config.output_dir / "errors.json", dump_json(out));
  return out;
}

}  // namespace spinsq::cli
