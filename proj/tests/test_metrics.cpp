#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "spinsq/dynamics.hpp"
#include "spinsq/metrics.hpp"
#include "spinsq/states.hpp"

using namespace spinsq;
using std::numbers::pi;

namespace {

constexpr double kOmegaQ = 2 * pi * 7580.0;

std::vector<SqueezingReport> default_run() {
  const Operator rho = coherent_state(SpinSystem(7), pi / 2, pi).projector();
  const std::vector<double> times = period_time_grid(7580.0);
  return report_trajectory(oat_trajectory(rho, kOmegaQ, times), times);
}

}  // namespace

TEST(SqueezingMoments, CoherentState) {
  const SpinSystem s(7);
  const SqueezingMoments m = squeezing_abc(coherent_state(s, pi / 2, pi).projector(), build_operators(s));
  EXPECT_NEAR(m.a, 0.0, 1e-12);
  EXPECT_NEAR(m.b, 0.0, 1e-12);
  EXPECT_NEAR(m.c, 3.5, 1e-12);
}

TEST(SqueezingMoments, MaximallyMixed) {
  const SpinSystem s(7);
  const SqueezingMoments m = squeezing_abc((1.0 / 8.0) * Operator::identity(8), build_operators(s));
  EXPECT_NEAR(m.a, 0.0, 1e-14);
  EXPECT_NEAR(m.b, 0.0, 1e-14);
  EXPECT_NEAR(m.c, 10.5, 1e-13);
}

TEST(SqueezingMoments, RejectsNonHermitian) {
  const SpinSystem s(3);
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  m(0, 3) = 0.2;
  EXPECT_THROW(squeezing_abc(Operator(m), build_operators(s)), std::invalid_argument);
}

TEST(SqueezingParameter, ClosedFormCases) {
  EXPECT_DOUBLE_EQ(squeezing_parameter(0.0, 0.0, 3.5, 3.5), 1.0);
  EXPECT_DOUBLE_EQ(squeezing_parameter(2.0, 0.0, 2.0, 3.5), 0.0);
  EXPECT_DOUBLE_EQ(squeezing_parameter(2.0, 0.0, 2.0 - 5e-10, 3.5), 0.0);  // clamped
  EXPECT_THROW(squeezing_parameter(2.0, 0.0, 1.9, 3.5), NumericalInconsistency);
  EXPECT_THROW(squeezing_parameter(0.0, 0.0, 1.0, 0.0), std::domain_error);
}

TEST(SqueezingAngle, Branches) {
  EXPECT_DOUBLE_EQ(squeezing_angle(1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(squeezing_angle(0.0, 1.0), pi / 4);
  EXPECT_DOUBLE_EQ(squeezing_angle(0.0, 0.0), pi / 4);
  EXPECT_DOUBLE_EQ(squeezing_angle(0.0, -1.0), pi / 4);  // half-open range keeps +pi/4
  EXPECT_NEAR(squeezing_angle(-1.0, 1e-3), -5e-4, 1e-9);
}

// Property: alpha is odd in B for A > 0 and always inside (-pi/4, pi/4].
TEST(SqueezingAngle, OddInBAndInRange) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 2000; ++n) {
    const double a = u(rng), b = u(rng);
    const double alpha = squeezing_angle(a, b);
    EXPECT_GT(alpha, -pi / 4);
    EXPECT_LE(alpha, pi / 4);
    if (a > 0) EXPECT_DOUBLE_EQ(squeezing_angle(a, -b), -alpha);
  }
}

TEST(Fidelity, BasicCases) {
  const AngularMomentum j = build_operators(SpinSystem(7));
  EXPECT_NEAR(fidelity(j.jx, j.jx), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(j.jx, j.jy), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(j.jz, -1.0 * j.jz), -1.0, 1e-15);
  EXPECT_THROW(fidelity(j.jx, Operator::zero(8)), std::domain_error);
  EXPECT_THROW(fidelity(j.jx, Operator::identity(3)), DimensionMismatch);
}

// Property: symmetric and bounded by Cauchy-Schwarz on random operators.
TEST(Fidelity, SymmetricAndBounded) {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 200; ++n) {
    const Operator a(Matrix(oracle::random_hermitian(8, 1.0, rng)));
    const Operator b(Matrix(oracle::random_hermitian(8, 1.0, rng)));
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-14);
    EXPECT_LE(std::abs(fidelity(a, b)), 1.0 + 1e-12);
    EXPECT_LE(gate_fidelity(a, b), 1.0 + 1e-12);
  }
}

// The finite tomography pulse: modulus 0.97191 of the quotient; the real part
// additionally carries the global phase the dropped I^2 term leaves behind.
TEST(Fidelity, TomographyPulse) {
  const SpinSystem s(7);
  const Propagator u = rf_pulse_operator(s, 2 * pi * 19e3, kOmegaQ, 0.0, 2.2e-6);
  const Propagator v = ideal_pulse_operator(s, 2 * pi * 19e3, 0.0, 2.2e-6);
  const complex q = fidelity_quotient(u.unitary(), v.unitary());
  EXPECT_NEAR(std::abs(q), 0.97191, 5e-5);
  EXPECT_NEAR(gate_fidelity(u.unitary(), v.unitary()), 0.972, 0.003);
  EXPECT_NEAR(fidelity(u.unitary(), v.unitary()), q.real(), 1e-15);
  EXPECT_NEAR(q.real(), 0.93568, 5e-5);
  // With the traceless quadrupolar term the global phase is gone and the real
  // part comes within a residual phase of order 1e-3 rad of the modulus.
  const Operator ut =
      propagator(nmr_hamiltonian(s, {.omega_q = kOmegaQ, .omega_1 = 2 * pi * 19e3}), 2.2e-6).unitary();
  EXPECT_NEAR(fidelity(ut, v.unitary()), std::abs(q), 1e-5);
}

TEST(ReportTrajectory, SingleCoherentState) {
  const Operator rho = coherent_state(SpinSystem(7), pi / 2, pi).projector();
  const std::vector<Operator> states{rho};
  const std::vector<double> times{0.0};
  const auto r = report_trajectory(states, times);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].xi, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r[0].alpha, pi / 4);
}

TEST(ReportTrajectory, RejectsMeanSpinOffAxis) {
  const Operator rho = coherent_state(SpinSystem(7), 1.0, pi).projector();
  const std::vector<Operator> states{rho};
  const std::vector<double> times{0.0};
  EXPECT_THROW(report_trajectory(states, times), NumericalInconsistency);
  const std::vector<double> two{0.0, 1.0};
  EXPECT_THROW(report_trajectory(states, two), std::invalid_argument);
}

TEST(ReportTrajectory, RevivalAndGoldenMinimum) {
  const auto r = default_run();
  ASSERT_EQ(r.size(), 45u);
  EXPECT_NEAR(r.front().xi, 1.0, 1e-9);
  EXPECT_NEAR(r.back().xi, r.front().xi, 1e-6);
  double lowest = 1.0;
  for (const auto& x : r) lowest = std::min(lowest, x.xi);
  EXPECT_LT(lowest, 1.0);
  EXPECT_NEAR(lowest, oracle::kGoldenMinXi, 1e-8);
  EXPECT_LT(r[4].xi, 1.0);
}

// Brute-force transverse variance minimization agrees with the closed form.
TEST(ReportTrajectory, MatchesVarianceScanOracle) {
  const auto r = default_run();
  const std::vector<double> times = period_time_grid(7580.0);
  const oracle::Vec psi0 = oracle::coherent(7, pi / 2, pi);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(r[k].xi, oracle::xi_bruteforce(oracle::oat(psi0, 7, kOmegaQ, times[k]), 7), 1e-9) << k;
  }
}

TEST(ReportTrajectory, AngleSweepsOnce) {
  const auto r = default_run();
  EXPECT_DOUBLE_EQ(r.front().alpha, pi / 4);
  EXPECT_GT(r[1].alpha, pi / 4 - 0.1);
  EXPECT_LT(r[43].alpha, -pi / 4 + 0.1);
  int jumps = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_GT(r[k].alpha, -pi / 4);
    EXPECT_LE(r[k].alpha, pi / 4);
    EXPECT_GE(r[k].c, std::hypot(r[k].a, r[k].b) - 1e-9);
    if (k > 0 && std::abs(r[k].alpha - r[k - 1].alpha) > pi / 4) ++jumps;
  }
  EXPECT_EQ(jumps, 1);
}

// Rotating the state about x changes alpha but not xi.
TEST(SqueezingParameter, InvariantUnderRotationAboutX) {
  const SpinSystem s(7);
  const AngularMomentum j = build_operators(s);
  const Operator rho = evolve(coherent_state(s, pi / 2, pi).projector(),
                              propagator(oat_hamiltonian(s, kOmegaQ), 12e-6));
  const SqueezingMoments m0 = squeezing_abc(rho, j);
  const double xi0 = squeezing_parameter(m0.a, m0.b, m0.c, 3.5);
  for (int n = 1; n < 16; ++n) {
    const double chi = 2 * pi * n / 16;
    const SqueezingMoments m = squeezing_abc(evolve(rho, propagator(j.jx, chi)), j);
    EXPECT_NEAR(squeezing_parameter(m.a, m.b, m.c, 3.5), xi0, 1e-8);
    // Radicand stays inside [0, C/2].
    const double rad = m.c / 2 - std::hypot(m.a, m.b) / 2;
    EXPECT_GE(rad, -1e-12);
    EXPECT_LE(rad, m.c / 2 + 1e-12);
  }
}
