#include "spinsq/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinsq {

Propagator::Propagator(Operator unitary, double duration)
    : unitary_(unitary.as(OperatorKind::Unitary)), duration_(duration) {}

Operator nmr_hamiltonian(SpinSystem spin, const NmrParams& params) {
  const AngularMomentum j = build_operators(spin);
  const Matrix& jz = j.jz.matrix();
  Matrix h = -params.detuning * jz + (params.omega_q / 6.0) * (3.0 * jz * jz - j.j2.matrix()) +
             params.omega_1 * (std::cos(params.phase) * j.jx.matrix() + std::sin(params.phase) * j.jy.matrix());
  return Operator(std::move(h), OperatorKind::Hermitian);
}

Operator oat_hamiltonian(SpinSystem spin, double omega_q) {
  const int d = spin.dim();
  Matrix h = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) h(i, i) = 0.5 * omega_q * spin.m(i) * spin.m(i);
  return Operator(std::move(h), OperatorKind::Hermitian);
}

Propagator propagator(const Operator& hamiltonian, double t) {
  if (!hamiltonian.is_hermitian()) {
    throw std::invalid_argument("propagator: generator is not Hermitian (defect " +
                                std::to_string(hamiltonian.hermiticity_defect()) + ")");
  }
  const int d = hamiltonian.dim();
  if (hamiltonian.is_diagonal()) {
    Matrix u = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) u(i, i) = std::polar(1.0, -hamiltonian(i, i).real() * t);
    return Propagator(Operator(std::move(u)), t);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian.matrix());
  if (eig.info() != Eigen::Success) throw NumericalInconsistency("propagator: eigendecomposition failed");
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, -eig.eigenvalues()(i) * t);
  const Matrix& v = eig.eigenvectors();
  Matrix u = v * phases.asDiagonal() * v.adjoint();
  return Propagator(Operator(std::move(u)), t);
}

Operator evolve(const Operator& rho, const Propagator& u) {
  require_same_dim(rho, u.unitary(), "evolve");
  const Matrix& m = u.unitary().matrix();
  Matrix out = m * rho.matrix() * m.adjoint();
  if (rho.kind() == OperatorKind::General || rho.kind() == OperatorKind::Unitary) return Operator(std::move(out));
  // Conjugation preserves Hermiticity exactly in theory; symmetrize away roundoff.
  out = 0.5 * (out + out.adjoint()).eval();
  return Operator(std::move(out), rho.kind());
}

Propagator rf_pulse_operator(SpinSystem spin, double omega_1, double omega_q, double phi, double t) {
  if (t < 0.0) throw std::domain_error("rf_pulse_operator: negative duration");
  const AngularMomentum j = build_operators(spin);
  const Matrix& jz = j.jz.matrix();
  Matrix h = omega_1 * (std::cos(phi) * j.jx.matrix() + std::sin(phi) * j.jy.matrix()) + (0.5 * omega_q) * jz * jz;
  return propagator(Operator(std::move(h), OperatorKind::Hermitian), t);
}

Propagator ideal_pulse_operator(SpinSystem spin, double omega_1, double phi, double t) {
  return rf_pulse_operator(spin, omega_1, 0.0, phi, t);
}

std::vector<Operator> oat_trajectory(const Operator& initial, double omega_q, std::span<const double> times) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) throw std::invalid_argument("oat_trajectory: times must be non-decreasing");
  }
  const SpinSystem spin(initial.dim() - 1);
  const Operator h = oat_hamiltonian(spin, omega_q);
  std::vector<Operator> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(evolve(initial, propagator(h, t)));
  return out;
}

std::vector<double> period_time_grid(double nu_q_hz, int points) {
  if (!(nu_q_hz > 0.0)) throw std::domain_error("period_time_grid: nu_Q must be positive");
  if (points < 2) throw std::domain_error("period_time_grid: need at least two points");
  const double period = 1.0 / nu_q_hz;
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) times[static_cast<std::size_t>(k)] = period * k / (points - 1);
  return times;
}

std::vector<double> uniform_time_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::domain_error("uniform_time_grid: step must be positive");
  if (stop < start) throw std::domain_error("uniform_time_grid: stop precedes start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) times.push_back(start + step * static_cast<double>(k));
  return times;
}

}  // namespace spinsq
