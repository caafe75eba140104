#pragma once

// Thermal, deviation, pseudo-pure and coherent spin states.

#include "spinsq/spin_algebra.hpp"

namespace spinsq {

/// CODATA 2018 exact values (SI).
namespace constants {
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K
inline constexpr const char* kSource = "CODATA 2018";
}  // namespace constants

/// Normalized pure state in the descending-m basis.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument if the norm differs from 1 by more than 1e-12.
  explicit StateVector(Vector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  complex operator[](int i) const { return amplitudes_(i); }

  /// |psi><psi|, tagged as a density matrix.
  Operator projector() const;

 private:
  Vector amplitudes_;
};

struct ThermalParams {
  double larmor_frequency;  // omega_L, rad/s
  double temperature;       // K
  double partition_dim;     // Z, high-temperature limit 2I+1
};

/// Nuclear spin coherent state
///   |zeta(theta, phi)> = sum_m C(2I, I+m)^{1/2} cos(theta/2)^{I-m} sin(theta/2)^{I+m}
///                        e^{-i(I+m)phi} |I,m>.
/// theta = 0 gives |I,-I>: <Jz> = -I cos(theta), <Jx> = I sin(theta) cos(phi).
StateVector coherent_state(SpinSystem spin, double theta, double phi);

/// Deviation density matrix of the thermal state, rho_0 = Iz.
Operator thermal_deviation(SpinSystem spin);

/// epsilon = hbar omega_L / (k_B T Z).
double polarization(const ThermalParams& params);

/// ((1 - epsilon)/Z) 1 + epsilon delta_rho. `delta_rho` must be Hermitian with
/// unit trace. Z defaults to the Hilbert-space dimension.
Operator pseudo_pure(SpinSystem spin, double epsilon, const Operator& delta_rho, double partition_dim = 0.0);

/// delta_rho - Tr(delta_rho)/d, the part of a state visible to traceless observables.
Operator traceless_part(const Operator& rho);

}  // namespace spinsq
