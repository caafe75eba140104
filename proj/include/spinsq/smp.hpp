#pragma once

// Adapted strongly modulated pulses: trains of constant-amplitude RF segments
// under the full quadrupolar Hamiltonian, Gaussian amplitude ramps at both
// ends, an eta-fold averaged state objective and simplex optimization.

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "spinsq/dynamics.hpp"
#include "spinsq/nelder_mead.hpp"

namespace spinsq {

struct PulseSegment {
  double amplitude;  // omega_1, rad/s
  double phase;      // rad
  double duration;   // s
};

using PulseTrain = std::vector<PulseSegment>;

/// Gaussian rise over the first ramp_fraction of the pulse, flat top, mirrored
/// fall. The Gaussian has sigma = sigma_fraction * ramp length and is
/// pedestal-subtracted so the envelope starts and ends at exactly zero.
struct EnvelopeSpec {
  double ramp_fraction = 0.1;
  double sigma_fraction = 0.33;
};

void validate(const EnvelopeSpec& envelope);

/// Envelope value in [0, 1] at time t of a pulse lasting `total`.
double envelope_value(const EnvelopeSpec& envelope, double t, double total);

/// Largest |d envelope / dt| for a pulse lasting `total`.
double envelope_lipschitz(const EnvelopeSpec& envelope, double total);

/// eta independent pulse trains played in separate experiments and averaged.
struct PulseProgram {
  std::vector<PulseTrain> variants;
  EnvelopeSpec envelope;

  int eta() const { return static_cast<int>(variants.size()); }
  /// Duration of the first train (all trains share it).
  double total_duration() const;
};

/// Throws std::invalid_argument on empty trains, non-positive durations,
/// negative amplitudes or mismatched train lengths.
void validate(const PulseProgram& program);

/// Scales every segment amplitude by the envelope at the segment midpoint.
PulseProgram apply_envelope(const PulseProgram& program);

/// Ordered product of segment propagators, first segment rightmost. Each
/// segment evolves under nmr_hamiltonian(omega_q, omega_1 = amplitude,
/// phase, detuning = 0).
Propagator smp_propagator(std::span<const PulseSegment> train, double omega_q, SpinSystem spin);

/// Fixed problem data for the pulse-parameter objective.
struct SmpContext {
  SpinSystem spin{7};
  double omega_q = 0.0;     // rad/s
  int n_segments = 16;
  int eta = 2;
  double t_smp = 0.0;       // s
  EnvelopeSpec envelope{};
  bool use_envelope = true;
  /// Segment amplitude = amplitude_scale * exp(p), capped at amplitude_cap.
  double amplitude_scale = 2.0 * std::numbers::pi * 10e3;
  double amplitude_cap = 2.0 * std::numbers::pi * 50e3;

  std::size_t parameter_count() const { return static_cast<std::size_t>(2 * eta * n_segments); }
};

void validate(const SmpContext& context);

/// Parameters are laid out [variant][segment][log-amplitude, phase]. Phases
/// are wrapped to [0, 2 pi); the envelope is applied when enabled.
PulseProgram decode_parameters(std::span<const double> params, const SmpContext& context);

/// Each train maps rho_0 = Iz to U Iz U^dagger; the eta images are averaged
/// and compared with the traceless part of `target` via fidelity().
double smp_objective(std::span<const double> params, const Operator& target, const SmpContext& context);

/// Same, for an already decoded program.
double program_fidelity(const PulseProgram& program, const Operator& target, double omega_q, SpinSystem spin);

/// |zeta(pi/2, pi)><zeta(pi/2, pi)|.
Operator default_smp_target(SpinSystem spin);

struct SmpConfig {
  SmpContext context{};
  int restarts = 8;
  std::uint64_t seed = 20140417;
  /// Simplex re-initializations per restart, each capped at evaluations_per_round.
  int rounds = 5;
  long evaluations_per_round = 4000;
  double initial_step = 0.1;
  /// A restart stops early once it reaches this fidelity.
  double stop_fidelity = 0.995;
  /// Results below this are flagged.
  double threshold = 0.99;
};

struct SmpResult {
  PulseProgram program;
  std::vector<double> parameters;
  double achieved_fidelity = 0.0;
  int best_restart = 0;
  int iterations = 0;    // simplex iterations of the winning restart
  long evaluations = 0;  // objective evaluations over all restarts
  std::uint64_t seed = 0;
  bool below_threshold = true;
  std::vector<double> restart_fidelities;
};

/// Desk-scale defaults: N = 16, eta = 2, t_smp = 2/nu_Q.
SmpConfig desk_scale_config(double nu_q_hz);
/// N = 256, eta = 4, t_smp = 2/nu_Q.
SmpConfig paper_scale_config(double nu_q_hz);

/// Maximizes the objective from `restarts` seeded random starts and returns
/// the best program. Deterministic for a given config.
SmpResult optimize_smp(const Operator& target, const SmpConfig& config);

}  // namespace spinsq
