#pragma once

// Squeezing parameter, squeezing angle and operator fidelities.
//
// The mean spin is assumed to point along x, so the squeezing plane is y-z:
//   A = <Jz^2 - Jy^2>,  B = <Jz Jy + Jy Jz>,  C = <Jz^2 + Jy^2>
//   xi = sqrt(C/2 - sqrt(A^2 + B^2)/2) / sqrt(J/2),  alpha = atan(B/A)/2.

#include <span>
#include <vector>

#include "spinsq/spin_algebra.hpp"

namespace spinsq {

struct SqueezingMoments {
  double a;
  double b;
  double c;
};

struct SqueezingReport {
  double time;  // s
  double a;
  double b;
  double c;
  double xi;
  double alpha;  // rad, in (-pi/4, pi/4]
};

/// Raw second moments A, B, C of a Hermitian state. Imaginary residues above
/// 1e-10 raise NumericalInconsistency.
SqueezingMoments squeezing_abc(const Operator& rho, const AngularMomentum& ops);

/// Radicand values down to -1e-9 are clamped to zero; below that the moments
/// cannot come from a physical state and NumericalInconsistency is thrown.
double squeezing_parameter(double a, double b, double c, double j);

/// |A| and |B| at or below this count as zero in squeezing_angle.
inline constexpr double kAngleDegeneracyTolerance = 1e-9;

/// atan(B/A)/2 on the principal branch. A = 0 maps to +pi/4 (the closed end of
/// the half-open range), which also covers the A = B = 0 coherent state.
double squeezing_angle(double a, double b);

/// Tr{A B^dagger} / sqrt(Tr{A A^dagger} Tr{B B^dagger}) as a complex number.
complex fidelity_quotient(const Operator& a, const Operator& b);

/// Real part of the fidelity quotient. For Hermitian operands the quotient is
/// real, so this is the signed normalized overlap. Throws std::domain_error
/// for a zero operand.
double fidelity(const Operator& a, const Operator& b);

/// Modulus of the fidelity quotient; insensitive to a relative global phase,
/// which is the meaningful comparison between two propagators.
double gate_fidelity(const Operator& a, const Operator& b);

/// squeezing_abc -> squeezing_parameter -> squeezing_angle for each state.
/// Every state must have |<Jy>|, |<Jz>| below 1e-8 (mean spin along x),
/// otherwise the raw moments are not variances and NumericalInconsistency is thrown.
std::vector<SqueezingReport> report_trajectory(std::span<const Operator> states, std::span<const double> times);

}  // namespace spinsq
