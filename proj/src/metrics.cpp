#include "spinsq/metrics.hpp"

#include <cmath>
#include <numbers>

namespace spinsq {
namespace {

constexpr double kImagTolerance = 1e-10;
constexpr double kRadicandTolerance = 1e-9;
constexpr double kMeanTolerance = 1e-8;

double real_checked(complex value, const char* what) {
  if (std::abs(value.imag()) > kImagTolerance * std::max(1.0, std::abs(value.real()))) {
    throw NumericalInconsistency(std::string("squeezing_abc: imaginary residue in ") + what);
  }
  return value.real();
}

}  // namespace

SqueezingMoments squeezing_abc(const Operator& rho, const AngularMomentum& ops) {
  require_same_dim(rho, ops.jz, "squeezing_abc");
  if (!rho.is_hermitian()) throw std::invalid_argument("squeezing_abc: state is not Hermitian");
  const Matrix& jy = ops.jy.matrix();
  const Matrix& jz = ops.jz.matrix();
  const Operator zz(jz * jz);
  const Operator yy(jy * jy);
  const Operator anti(jz * jy + jy * jz);
  const double zz_mean = real_checked(expectation(rho, zz), "<Jz^2>");
  const double yy_mean = real_checked(expectation(rho, yy), "<Jy^2>");
  const double b = real_checked(expectation(rho, anti), "B");
  return {zz_mean - yy_mean, b, zz_mean + yy_mean};
}

double squeezing_parameter(double a, double b, double c, double j) {
  if (!(j > 0.0)) throw std::domain_error("squeezing_parameter: J must be positive");
  double radicand = 0.5 * c - 0.5 * std::hypot(a, b);
  if (radicand < -kRadicandTolerance) {
    throw NumericalInconsistency("squeezing_parameter: C < sqrt(A^2 + B^2) (radicand " + std::to_string(radicand) +
                                 ")");
  }
  radicand = std::max(radicand, 0.0);
  return std::sqrt(radicand) / std::sqrt(0.5 * j);
}

double squeezing_angle(double a, double b) {
  if (std::abs(a) <= kAngleDegeneracyTolerance) return std::numbers::pi / 4.0;
  return 0.5 * std::atan(b / a);
}

complex fidelity_quotient(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "fidelity");
  const double norm_a = a.matrix().squaredNorm();
  const double norm_b = b.matrix().squaredNorm();
  if (norm_a == 0.0 || norm_b == 0.0) throw std::domain_error("fidelity: zero operator");
  // Tr{A B^dagger} = sum_ij A_ij conj(B_ij).
  const complex overlap = (a.matrix().array() * b.matrix().conjugate().array()).sum();
  return overlap / std::sqrt(norm_a * norm_b);
}

double fidelity(const Operator& a, const Operator& b) { return fidelity_quotient(a, b).real(); }

double gate_fidelity(const Operator& a, const Operator& b) { return std::abs(fidelity_quotient(a, b)); }

std::vector<SqueezingReport> report_trajectory(std::span<const Operator> states, std::span<const double> times) {
  if (states.size() != times.size()) throw std::invalid_argument("report_trajectory: states/times length mismatch");
  std::vector<SqueezingReport> reports;
  reports.reserve(states.size());
  if (states.empty()) return reports;
  const SpinSystem spin(states.front().dim() - 1);
  const AngularMomentum ops = build_operators(spin);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Operator& rho = states[i];
    const double mean_y = std::abs(expectation(rho, ops.jy));
    const double mean_z = std::abs(expectation(rho, ops.jz));
    if (mean_y > kMeanTolerance || mean_z > kMeanTolerance) {
      throw NumericalInconsistency("report_trajectory: mean spin has y/z components (" + std::to_string(mean_y) +
                                   ", " + std::to_string(mean_z) + "); raw moments are not variances");
    }
    const SqueezingMoments m = squeezing_abc(rho, ops);
    reports.push_back({times[i], m.a, m.b, m.c, squeezing_parameter(m.a, m.b, m.c, spin.spin()),
                       squeezing_angle(m.a, m.b)});
  }
  return reports;
}

}  // namespace spinsq
