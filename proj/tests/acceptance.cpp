// One [PASS]/[FAIL] line per acceptance criterion. Exit status is the number
// of failures, capped at 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "oracles.hpp"
#include "spinsq/calibration.hpp"
#include "spinsq/dynamics.hpp"
#include "spinsq/experiment.hpp"
#include "spinsq/metrics.hpp"
#include "spinsq/smp.hpp"
#include "spinsq/states.hpp"
#include "spinsq/wigner.hpp"

using namespace spinsq;
using std::numbers::pi;

namespace {

constexpr double kNuQ = 7580.0;
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Each check runs guarded so an exception is a failure, not an abort.
void check(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::vector<SqueezingReport> default_reports() {
  const cli::ExperimentConfig c;
  return report_trajectory(cli::default_trajectory_states(c), cli::time_grid(c));
}

void thermal_polarization() {
  const auto t0 = std::chrono::steady_clock::now();
  const double eps = polarization({2 * pi * 65.598e6, 299.15, 8.0});
  const double dt = seconds_since(t0);
  const bool ok = std::abs(eps - 1.3e-6) <= 0.05 * 1.3e-6 && dt < 1e-3;
  report(1, ok, fmt("epsilon = %.6e (target 1.3e-6 +/- 5%%), %.3g ms", eps, dt * 1e3));
}

void tomography_pulse() {
  const auto t0 = std::chrono::steady_clock::now();
  const PulseErrorReport r = pulse_error_report(SpinSystem(7), 2 * pi * 19e3, 2 * pi * kNuQ, 0.0, 2.2e-6);
  const double dt = seconds_since(t0);
  report(2, std::abs(r.fidelity - 0.972) <= 0.003 && dt < 10e-3,
         fmt("F = %.6f (target 0.972 +/- 0.003), %.3g ms", r.fidelity, dt * 1e3));
}

void baseline_and_revival() {
  const auto rep = default_reports();
  const double xi0 = rep.front().xi, xi_end = rep.back().xi;
  const SpinSystem s(7);
  const Propagator u = propagator(oat_hamiltonian(s, 2 * pi * kNuQ), 1.0 / kNuQ);
  // Direct evaluation: diag exp(-i pi m^2) over m = 7/2 .. -7/2.
  oracle::Mat expected = oracle::Mat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    const double m = 3.5 - i;
    expected(i, i) = std::polar(1.0, -pi * m * m);
  }
  const double target_gap = (expected - std::polar(1.0, -pi / 4) * oracle::Mat::Identity(8, 8)).cwiseAbs().maxCoeff();
  const double gap = (u.unitary().matrix() - expected).cwiseAbs().maxCoeff();
  const bool ok = std::abs(xi0 - 1) <= 1e-9 && std::abs(xi_end - xi0) <= 1e-6 && gap <= 1e-10 && target_gap <= 1e-12;
  report(3, ok, fmt("xi(0) = %.12f, |xi(end) - xi(0)| = %.2e, |U - exp(-i pi/4) 1| = %.2e", xi0,
                    std::abs(xi_end - xi0), gap));
}

void squeezing_minimum() {
  const auto rep = default_reports();
  const auto it = std::min_element(rep.begin(), rep.end(), [](auto& a, auto& b) { return a.xi < b.xi; });
  const bool ok = it->xi < 1 && std::abs(it->xi - oracle::kGoldenMinXi) <= 1e-8;
  report(4, ok, fmt("min xi = %.15f at %.3f us (golden %.15f)", it->xi, it->time * 1e6, oracle::kGoldenMinXi));
}

void angle_trajectory() {
  const auto rep = default_reports();
  bool in_range = true;
  for (const auto& r : rep) in_range = in_range && r.alpha > -pi / 4 && r.alpha <= pi / 4;
  const bool starts = std::abs(rep.front().alpha - pi / 4) < 1e-12 && std::abs(rep[1].alpha - pi / 4) < 0.1;
  const double before_end = rep[rep.size() - 2].alpha;
  int jumps = 0;
  for (std::size_t i = 1; i < rep.size(); ++i) {
    if (std::abs(rep[i].alpha - rep[i - 1].alpha) > pi / 4) ++jumps;
  }
  const bool ok = in_range && starts && before_end < -pi / 4 + 0.1 && jumps == 1;
  report(5, ok, fmt("range ok = %d, alpha(0) = %.6f, alpha(tau_1) = %.6f, alpha(tau_43) = %.6f, jumps = %d", in_range,
                    rep.front().alpha, rep[1].alpha, before_end, jumps));
}

void wigner_normalization() {
  const cli::ExperimentConfig c;
  const auto states = cli::default_trajectory_states(c);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  bool argmax_ok = false;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const WignerGrid g = wigner_map(states[k], 64, 128);
    worst = std::max(worst, std::abs(sphere_integral(g) - 1));
    if (k == 0) argmax_ok = g.argmax() == g.nearest_node(pi / 2, pi);
  }
  const double dt = seconds_since(t0);
  report(6, worst <= 1e-8 && argmax_ok && dt < 2.0,
         fmt("max |integral - 1| = %.2e over %zu states, k=0 argmax at nearest node = %d, %.3f s", worst,
             states.size(), argmax_ok, dt));
}

void temperature_budget() {
  const TempModel m{};
  const double lo = nu_q_at(m, 299.15 + 0.1), hi = nu_q_at(m, 299.15 - 0.1);
  const double u = nu_q_uncertainty(m, 0.1);
  const bool ok = nu_q_at(m, 299.15) == 7580.0 && std::abs(u - 25.0) < 1e-9 && std::abs(hi - lo - 50.0) < 1e-9;
  report(7, ok, fmt("nu_Q = %.3f Hz, +/-0.1 K gives [%.3f, %.3f], uncertainty %.6f Hz", nu_q_at(m, 299.15), lo, hi,
                    u));
}

void smp_desk_scale() {
  const SpinSystem s(7);
  const Operator target = coherent_state(s, pi / 2, pi).projector();
  const SmpConfig cfg = desk_scale_config(kNuQ);
  const auto t0 = std::chrono::steady_clock::now();
  const SmpResult a = optimize_smp(target, cfg);
  const double dt = seconds_since(t0);
  const SmpResult b = optimize_smp(target, cfg);
  const bool same = a.parameters == b.parameters && a.achieved_fidelity == b.achieved_fidelity;
  const bool ok = cfg.context.n_segments == 16 && cfg.context.eta == 2 && cfg.restarts == 8 &&
                  a.achieved_fidelity >= 0.99 && same && dt < 60.0;
  report(8, ok, fmt("N = %d, eta = %d, restarts = %d, seed = %llu, F = %.6f, rerun identical = %d, %.1f s",
                    cfg.context.n_segments, cfg.context.eta, cfg.restarts,
                    static_cast<unsigned long long>(cfg.seed), a.achieved_fidelity, same, dt));
}

void algebra_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  double comm = 0, ortho = 0, unit = 0, trace = 0, recon = 0;
  for (int two_i : {1, 2, 3, 7}) {
    const SpinSystem s(two_i);
    const AngularMomentum j = build_operators(s);
    const Operator i_jz = complex(0, 1) * j.jz;
    comm = std::max({comm, max_abs_diff(commutator(j.jx, j.jy), i_jz),
                     max_abs_diff(commutator(j.jy, j.jz), complex(0, 1) * j.jx),
                     max_abs_diff(commutator(j.jz, j.jx), complex(0, 1) * j.jy)});
    const TensorBasis& basis = tensor_basis(s);
    for (int a = 0; a < basis.size(); ++a) {
      for (int b = 0; b < basis.size(); ++b) {
        const int ka = static_cast<int>(std::sqrt(a)), kb = static_cast<int>(std::sqrt(b));
        const complex ip = expectation(basis(ka, a - ka * ka - ka).adjoint(), basis(kb, b - kb * kb - kb));
        ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
    }
    const int d = s.dim();
    for (int rep = 0; rep < 5; ++rep) {
      const Operator h(oracle::random_hermitian(d, 1e4, rng), OperatorKind::Hermitian);
      const Propagator u = propagator(h, 1e-4 * (rep + 1));
      unit = std::max(unit, u.unitary().unitarity_defect());
      oracle::Vec v = oracle::Vec::Random(d);
      v.normalize();
      const Operator rho(v * v.adjoint(), OperatorKind::Density);
      const Operator out = evolve(rho, u);
      trace = std::max(trace, std::abs(out.trace() - 1.0));
      recon = std::max(recon, max_abs_diff(multipoles(out).reconstruct(), out));
    }
  }
  const double dt = seconds_since(t0);
  const bool ok = comm < 1e-12 && ortho < 1e-12 && unit < 1e-10 && trace < 1e-10 && recon < 1e-12 && dt < 5.0;
  report(9, ok, fmt("commutators %.1e, T_KQ orthonormality %.1e, unitarity %.1e, trace %.1e, reconstruction %.1e, "
                    "%.3f s",
                    comm, ortho, unit, trace, recon, dt));
}

void noise_regime() {
  const cli::ExperimentConfig c;
  const auto theory = cli::default_trajectory_states(c);
  std::mt19937_64 rng(2014);
  std::vector<Operator> measured;
  for (const Operator& rho : theory) measured.push_back(hermitian_noise(rho, 0.10, rng));
  const std::vector<double> f = batch_fidelity(measured, theory);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  report(10, mean > 0.8 && mean < 1.0,
         fmt("10%% noise: mean batch fidelity %.4f, range [%.4f, %.4f] over %zu states", mean, *lo, *hi, f.size()));
}

}  // namespace

int main() {
  check(1, thermal_polarization);
  check(2, tomography_pulse);
  check(3, baseline_and_revival);
  check(4, squeezing_minimum);
  check(5, angle_trajectory);
  check(6, wigner_normalization);
  check(7, temperature_budget);
  check(8, smp_desk_scale);
  check(9, algebra_suite);
  check(10, noise_regime);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
