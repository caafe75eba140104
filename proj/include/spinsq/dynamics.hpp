#pragma once

// Rotating-frame NMR Hamiltonians, exact propagators and one-axis-twisting
// evolution.

#include <span>
#include <vector>

#include "spinsq/spin_algebra.hpp"

namespace spinsq {

struct NmrParams {
  double omega_q = 0.0;   // quadrupolar coupling, rad/s (sign: prolate/oblate)
  double omega_1 = 0.0;   // RF strength, rad/s, >= 0
  double detuning = 0.0;  // omega_L - omega_RF, rad/s
  double phase = 0.0;     // RF phase, rad
};

/// Unitary exp(-iHt) together with its duration.
class Propagator {
 public:
  /// Verifies unitarity to 1e-10.
  Propagator(Operator unitary, double duration);

  const Operator& unitary() const { return unitary_; }
  double duration() const { return duration_; }
  int dim() const { return unitary_.dim(); }

 private:
  Operator unitary_;
  double duration_;
};

/// -detuning Jz + (omega_Q/6)(3Jz^2 - J^2) + omega_1 (Jx cos(phi) + Jy sin(phi)).
Operator nmr_hamiltonian(SpinSystem spin, const NmrParams& params);

/// (omega_Q/2) Jz^2, the quadrupolar Hamiltonian with the I^2 constant dropped.
Operator oat_hamiltonian(SpinSystem spin, double omega_q);

/// exp(-i H t) by Hermitian eigendecomposition; diagonal H takes a direct path.
/// Throws std::invalid_argument for non-Hermitian H.
Propagator propagator(const Operator& hamiltonian, double t);

/// U rho U^dagger.
Operator evolve(const Operator& rho, const Propagator& u);

/// exp[-i omega_1 t (Jx cos(phi) + Jy sin(phi)) - i (omega_Q t / 2) Jz^2].
Propagator rf_pulse_operator(SpinSystem spin, double omega_1, double omega_q, double phi, double t);

/// exp[-i omega_1 t (Jx cos(phi) + Jy sin(phi))].
Propagator ideal_pulse_operator(SpinSystem spin, double omega_1, double phi, double t);

/// Evolves `initial` under the OAT Hamiltonian to each time independently.
/// Times must be non-decreasing.
std::vector<Operator> oat_trajectory(const Operator& initial, double omega_q, std::span<const double> times);

/// `points` equally spaced times from 0 to one quadrupolar period 1/nu_Q.
std::vector<double> period_time_grid(double nu_q_hz, int points = 45);

/// start, start + step, ... up to stop (inclusive within a 1e-9 step tolerance).
std::vector<double> uniform_time_grid(double start, double stop, double step);

}  // namespace spinsq
