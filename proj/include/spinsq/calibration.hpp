#pragma once

// Error budget: tomography-pulse accuracy, temperature drift of nu_Q, hidden
// spectrometer delays and batch fidelities against theory.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "spinsq/spin_algebra.hpp"

namespace spinsq {

/// Linear nu_Q(T) model.
struct TempModel {
  double nu_q_ref = 7580.0;  // Hz at t_ref
  double t_ref = 299.15;     // K
  double slope = -250.0;     // Hz / K
};

/// nu_q_ref + slope (temperature - t_ref). Throws std::domain_error for T <= 0.
double nu_q_at(const TempModel& model, double temperature);

/// |slope| * temp_accuracy.
double nu_q_uncertainty(const TempModel& model, double temp_accuracy);

struct PulseErrorReport {
  double fidelity;
  double error_percent;
};

/// Compares the real pulse U (RF plus quadrupolar term) with the ideal
/// rotation V using gate_fidelity(). Requires t > 0.
PulseErrorReport pulse_error_report(SpinSystem spin, double omega_1, double omega_q, double phi, double t);

enum class DelayKind { PhaseSet, GateOn, GateOff, AcquisitionSample, FrequencyChange };

inline constexpr std::array<DelayKind, 5> kAllDelayKinds = {DelayKind::PhaseSet, DelayKind::GateOn,
                                                            DelayKind::GateOff, DelayKind::AcquisitionSample,
                                                            DelayKind::FrequencyChange};

std::string_view to_string(DelayKind kind);

struct DelayEvent {
  DelayKind kind;
  int count = 1;
};

/// Per-kind latency in seconds. Defaults are the instrument's upper bounds,
/// so budgets built from them are upper estimates.
struct DelayTable {
  double phase_set = 50e-9;
  double gate_on = 50e-9;
  double gate_off = 50e-9;
  double acquisition_sample = 200e-9;
  double frequency_change = 4e-6;

  double operator[](DelayKind kind) const;
};

/// sum count * latency. Throws std::invalid_argument for negative counts.
double hidden_delay_budget(std::span<const DelayEvent> events, const DelayTable& table = {});

/// Phase set, gate on, gate off: the latency wrapped around one RF pulse.
std::vector<DelayEvent> single_pulse_events();

/// Elementwise fidelity(measured[i], theoretical[i]).
std::vector<double> batch_fidelity(std::span<const Operator> measured, std::span<const Operator> theoretical);

/// Adds independent complex Gaussian noise to every entry with standard
/// deviation `relative_level` times the RMS entry magnitude, then Hermitizes.
Operator hermitian_noise(const Operator& rho, double relative_level, std::mt19937_64& rng);

}  // namespace spinsq
