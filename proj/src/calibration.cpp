#include "spinsq/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "spinsq/dynamics.hpp"
#include "spinsq/metrics.hpp"

namespace spinsq {

double nu_q_at(const TempModel& model, double temperature) {
  if (!(temperature > 0.0)) throw std::domain_error("nu_q_at: temperature must be positive");
  return model.nu_q_ref + model.slope * (temperature - model.t_ref);
}

double nu_q_uncertainty(const TempModel& model, double temp_accuracy) {
  if (!(temp_accuracy >= 0.0)) throw std::domain_error("nu_q_uncertainty: accuracy must be non-negative");
  return std::abs(model.slope) * temp_accuracy;
}

PulseErrorReport pulse_error_report(SpinSystem spin, double omega_1, double omega_q, double phi, double t) {
  if (!(t > 0.0)) throw std::domain_error("pulse_error_report: pulse length must be positive");
  const Propagator real_pulse = rf_pulse_operator(spin, omega_1, omega_q, phi, t);
  const Propagator ideal_pulse = ideal_pulse_operator(spin, omega_1, phi, t);
  const double f = gate_fidelity(real_pulse.unitary(), ideal_pulse.unitary());
  return {f, (1.0 - f) * 100.0};
}

std::string_view to_string(DelayKind kind) {
  switch (kind) {
    case DelayKind::PhaseSet: return "phase_set";
    case DelayKind::GateOn: return "gate_on";
    case DelayKind::GateOff: return "gate_off";
    case DelayKind::AcquisitionSample: return "acquisition_sample";
    case DelayKind::FrequencyChange: return "frequency_change";
  }
  return "unknown";
}

double DelayTable::operator[](DelayKind kind) const {
  switch (kind) {
    case DelayKind::PhaseSet: return phase_set;
    case DelayKind::GateOn: return gate_on;
    case DelayKind::GateOff: return gate_off;
    case DelayKind::AcquisitionSample: return acquisition_sample;
    case DelayKind::FrequencyChange: return frequency_change;
  }
  return 0.0;
}

double hidden_delay_budget(std::span<const DelayEvent> events, const DelayTable& table) {
  double total = 0.0;
  for (const DelayEvent& e : events) {
    if (e.count < 0) throw std::invalid_argument("hidden_delay_budget: negative event count");
    total += e.count * table[e.kind];
  }
  return total;
}

std::vector<DelayEvent> single_pulse_events() {
  return {{DelayKind::PhaseSet, 1}, {DelayKind::GateOn, 1}, {DelayKind::GateOff, 1}};
}

std::vector<double> batch_fidelity(std::span<const Operator> measured, std::span<const Operator> theoretical) {
  if (measured.size() != theoretical.size()) {
    throw std::invalid_argument("batch_fidelity: measured and theoretical lists differ in length");
  }
  std::vector<double> out;
  out.reserve(measured.size());
  for (std::size_t i = 0; i < measured.size(); ++i) out.push_back(fidelity(measured[i], theoretical[i]));
  return out;
}

Operator hermitian_noise(const Operator& rho, double relative_level, std::mt19937_64& rng) {
  if (!(relative_level >= 0.0)) throw std::domain_error("hermitian_noise: level must be non-negative");
  const int d = rho.dim();
  const double rms = rho.matrix().norm() / d;
  // Each of the real and imaginary parts carries half the variance.
  std::normal_distribution<double> gauss(0.0, relative_level * rms / std::sqrt(2.0));
  Matrix m = rho.matrix();
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) += complex(re, im);
    }
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return Operator(std::move(m), OperatorKind::Hermitian);
}

}  // namespace spinsq
