#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "spinsq/calibration.hpp"
#include "spinsq/dynamics.hpp"
#include "spinsq/states.hpp"

using namespace spinsq;
using std::numbers::pi;

TEST(TempModel, ReferenceAndDrift) {
  const TempModel m{};
  EXPECT_DOUBLE_EQ(nu_q_at(m, 299.15), 7580.0);
  EXPECT_NEAR(nu_q_at(m, 299.25), 7555.0, 1e-9);
  EXPECT_NEAR(nu_q_at(m, 299.05), 7605.0, 1e-9);
  EXPECT_DOUBLE_EQ(nu_q_at({7580.0, 299.15, 0.0}, 350.0), 7580.0);
  EXPECT_THROW(nu_q_at(m, 0.0), std::domain_error);
}

TEST(TempModel, Uncertainty) {
  const TempModel m{};
  EXPECT_DOUBLE_EQ(nu_q_uncertainty(m, 0.1), 25.0);
  EXPECT_DOUBLE_EQ(nu_q_uncertainty(m, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(nu_q_uncertainty(m, 1.0), 250.0);
  EXPECT_THROW(nu_q_uncertainty(m, -0.1), std::domain_error);
}

// Linear model: second differences vanish on a dyadic grid where the
// arithmetic is exact.
TEST(TempModel, ExactlyLinear) {
  const TempModel m{7580.0, 300.0, -250.0};
  for (int i = 0; i < 64; ++i) {
    const double t = 280.0 + 0.25 * i;
    EXPECT_EQ(nu_q_at(m, t + 0.25) - 2 * nu_q_at(m, t) + nu_q_at(m, t - 0.25), 0.0);
  }
}

TEST(PulseError, ExperimentalParameters) {
  const PulseErrorReport r = pulse_error_report(SpinSystem(7), 2 * pi * 19e3, 2 * pi * 7580.0, 0.0, 2.2e-6);
  EXPECT_NEAR(r.fidelity, 0.972, 0.003);
  EXPECT_NEAR(r.error_percent, 2.8, 0.3);
  EXPECT_NEAR(r.error_percent, (1 - r.fidelity) * 100, 1e-12);
}

TEST(PulseError, VanishingQuadrupolarTerm) {
  const PulseErrorReport r = pulse_error_report(SpinSystem(7), 2 * pi * 19e3, 0.0, 0.3, 2.2e-6);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-14);
  EXPECT_NEAR(r.error_percent, 0.0, 1e-12);
  EXPECT_THROW(pulse_error_report(SpinSystem(7), 1e5, 1e4, 0.0, 0.0), std::domain_error);
}

TEST(PulseError, MonotoneInPulseLength) {
  double last = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const double t = 5e-6 * n / 100;
    const double err = pulse_error_report(SpinSystem(7), 2 * pi * 19e3, 2 * pi * 7580.0, 0.0, t).error_percent;
    EXPECT_GE(err, last - 1e-12) << t;
    last = err;
  }
}

TEST(PulseError, ApproachesOneAsRatioShrinks) {
  const double w1t = 2 * pi * 19e3 * 2.2e-6;
  double last_error = 1.0;
  for (double ratio : {0.4, 0.1, 0.01, 0.001}) {
    const double w1 = 2 * pi * 19e3;
    const double f = pulse_error_report(SpinSystem(7), w1, ratio * w1, 0.0, w1t / w1).fidelity;
    EXPECT_LT(1 - f, last_error);
    last_error = 1 - f;
  }
  EXPECT_LT(last_error, 1e-6);
}

TEST(HiddenDelays, Budgets) {
  EXPECT_NEAR(hidden_delay_budget(single_pulse_events()), 150e-9, 1e-20);
  EXPECT_EQ(hidden_delay_budget({}), 0.0);
  const std::vector<DelayEvent> freq{{DelayKind::FrequencyChange, 1}};
  EXPECT_NEAR(hidden_delay_budget(freq), 4e-6, 1e-20);
  const std::vector<DelayEvent> with_switch{{DelayKind::PhaseSet, 1}, {DelayKind::GateOn, 1}, {DelayKind::GateOff, 1},
                                      {DelayKind::FrequencyChange, 1}};
  EXPECT_NEAR(hidden_delay_budget(with_switch), 4.15e-6, 1e-18);
  const std::vector<DelayEvent> bad{{DelayKind::GateOn, -1}};
  EXPECT_THROW(hidden_delay_budget(bad), std::invalid_argument);
}

TEST(HiddenDelays, ConfigurableAndAdditive) {
  DelayTable table;
  table.acquisition_sample = 1e-7;
  const std::vector<DelayEvent> a{{DelayKind::AcquisitionSample, 3}, {DelayKind::PhaseSet, 2}};
  const std::vector<DelayEvent> b{{DelayKind::FrequencyChange, 2}, {DelayKind::GateOff, 5}};
  std::vector<DelayEvent> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  EXPECT_NEAR(hidden_delay_budget(ab, table), hidden_delay_budget(a, table) + hidden_delay_budget(b, table), 1e-20);
  EXPECT_NEAR(hidden_delay_budget(a, table), 3e-7 + 1e-7, 1e-20);
  for (DelayKind k : kAllDelayKinds) EXPECT_FALSE(to_string(k).empty());
}

TEST(BatchFidelity, IdenticalEmptyAndMismatch) {
  const SpinSystem s(7);
  const std::vector<double> times = period_time_grid(7580.0);
  const auto states = oat_trajectory(coherent_state(s, pi / 2, pi).projector(), 2 * pi * 7580.0, times);
  for (double f : batch_fidelity(states, states)) EXPECT_NEAR(f, 1.0, 1e-14);
  EXPECT_TRUE(batch_fidelity({}, {}).empty());
  const std::vector<Operator> one{states[0]};
  EXPECT_THROW(batch_fidelity(one, states), std::invalid_argument);
}

TEST(BatchFidelity, TenPercentNoiseRegime) {
  const SpinSystem s(7);
  const std::vector<double> times = period_time_grid(7580.0);
  const auto theory = oat_trajectory(coherent_state(s, pi / 2, pi).projector(), 2 * pi * 7580.0, times);
  std::mt19937_64 rng(2014);
  std::vector<Operator> measured;
  for (const Operator& rho : theory) measured.push_back(hermitian_noise(rho, 0.10, rng));
  const std::vector<double> f = batch_fidelity(measured, theory);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / f.size();
  EXPECT_GT(mean, 0.8);
  EXPECT_LT(mean, 1.0);
  for (const Operator& m : measured) EXPECT_TRUE(m.is_hermitian());
}

TEST(HermitianNoise, ZeroLevelIsIdentity) {
  std::mt19937_64 rng(1);
  const Operator rho = coherent_state(SpinSystem(3), 0.5, 0.5).projector();
  EXPECT_LT(max_abs_diff(hermitian_noise(rho, 0.0, rng), rho), 1e-16);
  EXPECT_THROW(hermitian_noise(rho, -0.1, rng), std::domain_error);
}
