#include "spinsq/states.hpp"

#include <cmath>

namespace spinsq {
namespace {

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// x^n with 0^0 = 1.
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw std::invalid_argument("state vector: empty");
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state vector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
  }
}

Operator StateVector::projector() const {
  return Operator(amplitudes_ * amplitudes_.adjoint(), OperatorKind::Density);
}

StateVector coherent_state(SpinSystem spin, double theta, double phi) {
  const int d = spin.dim();
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Vector amps(d);
  for (int i = 0; i < d; ++i) {
    // Basis index i has m = I - i, so I - m = i and I + m = 2I - i.
    const int i_minus_m = i;
    const int i_plus_m = spin.two_i() - i;
    const double magnitude =
        std::sqrt(binomial(spin.two_i(), i_plus_m)) * ipow(c, i_minus_m) * ipow(s, i_plus_m);
    amps(i) = magnitude * std::polar(1.0, -static_cast<double>(i_plus_m) * phi);
  }
  // Rounding in the powers leaves the norm within a few ulps of 1.
  amps /= amps.norm();
  return StateVector(std::move(amps));
}

Operator thermal_deviation(SpinSystem spin) {
  return build_operators(spin).jz.as(OperatorKind::Deviation);
}

double polarization(const ThermalParams& params) {
  if (!(params.temperature > 0.0)) throw std::domain_error("polarization: temperature must be positive");
  if (!(params.larmor_frequency > 0.0)) throw std::domain_error("polarization: Larmor frequency must be positive");
  if (!(params.partition_dim > 0.0)) throw std::domain_error("polarization: partition dimension must be positive");
  return constants::kHbar * params.larmor_frequency /
         (constants::kBoltzmann * params.temperature * params.partition_dim);
}

Operator pseudo_pure(SpinSystem spin, double epsilon, const Operator& delta_rho, double partition_dim) {
  if (delta_rho.dim() != spin.dim()) throw DimensionMismatch("pseudo_pure: delta_rho dimension mismatch");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::domain_error("pseudo_pure: epsilon must lie in [0, 1]");
  if (!delta_rho.is_hermitian()) throw std::invalid_argument("pseudo_pure: delta_rho is not Hermitian");
  if (std::abs(delta_rho.trace() - 1.0) > Tolerance::kTrace) {
    throw std::invalid_argument("pseudo_pure: delta_rho must have unit trace");
  }
  const double z = partition_dim > 0.0 ? partition_dim : static_cast<double>(spin.dim());
  Matrix rho = ((1.0 - epsilon) / z) * Matrix::Identity(spin.dim(), spin.dim()) + epsilon * delta_rho.matrix();
  return Operator(std::move(rho), OperatorKind::Hermitian);
}

Operator traceless_part(const Operator& rho) {
  const complex shift = rho.trace() / static_cast<double>(rho.dim());
  Matrix m = rho.matrix();
  m.diagonal().array() -= shift;
  return Operator(std::move(m), rho.is_hermitian() ? OperatorKind::Deviation : OperatorKind::General);
}

}  // namespace spinsq
