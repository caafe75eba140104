#include "spinsq/smp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "spinsq/metrics.hpp"
#include "spinsq/states.hpp"

namespace spinsq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
  const double wrapped = phase - kTwoPi * std::floor(phase / kTwoPi);
  return wrapped >= kTwoPi ? 0.0 : wrapped;
}

// Unit Gaussian ramp, pedestal removed: 0 at distance `ramp` from the plateau edge.
double ramp_value(double distance_from_plateau, double ramp, double sigma) {
  const double pedestal = std::exp(-0.5 * (ramp / sigma) * (ramp / sigma));
  const double g = std::exp(-0.5 * (distance_from_plateau / sigma) * (distance_from_plateau / sigma));
  return std::max(0.0, (g - pedestal) / (1.0 - pedestal));
}

// exp(-i H t) for one segment. H = Rz(phi) (H_Q + a Jx) Rz(phi)^dagger with
// Rz(phi) = exp(-i phi Jz), because H_Q commutes with Jz; H_Q + a Jx is real
// symmetric tridiagonal in the m basis.
Matrix segment_unitary(const PulseSegment& seg, double omega_q, SpinSystem spin) {
  const int d = spin.dim();
  const double casimir = spin.casimir();
  RealVector diag(d);
  RealVector sub(std::max(d - 1, 1));
  for (int i = 0; i < d; ++i) {
    const double m = spin.m(i);
    diag(i) = (omega_q / 6.0) * (3.0 * m * m - casimir);
    if (i + 1 < d) {
      // <m|Jx|m-1> = sqrt(I(I+1) - m(m-1)) / 2
      sub(i) = 0.5 * seg.amplitude * std::sqrt(casimir - m * (m - 1.0));
    }
  }
  Matrix w(d, d);
  if (d == 1) {
    w(0, 0) = std::polar(1.0, -diag(0) * seg.duration);
    return w;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig;
  eig.computeFromTridiagonal(diag, sub.head(d - 1), Eigen::ComputeEigenvectors);
  const RealMatrix& v = eig.eigenvectors();
  Vector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, -eig.eigenvalues()(k) * seg.duration);
  // Rz(phi) conjugation: W_rc -> z_r W_rc conj(z_c) with z_r = e^{-i phi m_r}.
  Vector z(d);
  for (int r = 0; r < d; ++r) z(r) = std::polar(1.0, -seg.phase * spin.m(r));
  for (int c = 0; c < d; ++c) {
    for (int r = c; r < d; ++r) {
      complex acc = 0.0;
      for (int k = 0; k < d; ++k) acc += (v(r, k) * v(c, k)) * phases(k);
      w(r, c) = acc * z(r) * std::conj(z(c));
      // V D V^T is symmetric; the conjugation flips the phase factor.
      if (r != c) w(c, r) = acc * z(c) * std::conj(z(r));
    }
  }
  return w;
}

Matrix train_unitary(std::span<const PulseSegment> train, double omega_q, SpinSystem spin) {
  Matrix u = Matrix::Identity(spin.dim(), spin.dim());
  for (const PulseSegment& seg : train) u = (segment_unitary(seg, omega_q, spin) * u).eval();
  return u;
}

Matrix averaged_image(const PulseProgram& program, double omega_q, SpinSystem spin) {
  const Matrix jz = thermal_deviation(spin).matrix();
  Matrix avg = Matrix::Zero(spin.dim(), spin.dim());
  for (const PulseTrain& train : program.variants) {
    const Matrix u = train_unitary(train, omega_q, spin);
    avg += u * jz * u.adjoint();
  }
  avg /= static_cast<double>(program.eta());
  return avg;
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void validate(const EnvelopeSpec& envelope) {
  if (!(envelope.ramp_fraction > 0.0 && envelope.ramp_fraction <= 0.5)) {
    throw std::invalid_argument("envelope: ramp_fraction must lie in (0, 0.5]");
  }
  if (!(envelope.sigma_fraction > 0.0)) throw std::invalid_argument("envelope: sigma_fraction must be positive");
}

double envelope_value(const EnvelopeSpec& envelope, double t, double total) {
  const double ramp = envelope.ramp_fraction * total;
  const double sigma = envelope.sigma_fraction * ramp;
  if (t <= 0.0 || t >= total) return 0.0;
  if (t < ramp) return ramp_value(ramp - t, ramp, sigma);
  if (t > total - ramp) return ramp_value(t - (total - ramp), ramp, sigma);
  return 1.0;
}

double envelope_lipschitz(const EnvelopeSpec& envelope, double total) {
  const double ramp = envelope.ramp_fraction * total;
  const double sigma = envelope.sigma_fraction * ramp;
  const double pedestal = std::exp(-0.5 * (ramp / sigma) * (ramp / sigma));
  // max |d/dx exp(-x^2 / 2 sigma^2)| = e^{-1/2} / sigma, reached at x = sigma.
  const double x = std::min(sigma, ramp);
  const double slope = x / (sigma * sigma) * std::exp(-0.5 * (x / sigma) * (x / sigma));
  return slope / (1.0 - pedestal);
}

double PulseProgram::total_duration() const {
  double total = 0.0;
  if (!variants.empty()) {
    for (const PulseSegment& s : variants.front()) total += s.duration;
  }
  return total;
}

void validate(const PulseProgram& program) {
  if (program.variants.empty()) throw std::invalid_argument("pulse program: eta must be at least 1");
  const std::size_t n = program.variants.front().size();
  if (n == 0) throw std::invalid_argument("pulse program: trains must contain at least one segment");
  for (const PulseTrain& train : program.variants) {
    if (train.size() != n) throw std::invalid_argument("pulse program: trains differ in length");
    for (const PulseSegment& s : train) {
      if (!(s.duration > 0.0)) throw std::invalid_argument("pulse program: segment duration must be positive");
      if (!(s.amplitude >= 0.0)) throw std::invalid_argument("pulse program: segment amplitude must be non-negative");
      if (!std::isfinite(s.phase)) throw std::invalid_argument("pulse program: non-finite phase");
    }
  }
  validate(program.envelope);
}

PulseProgram apply_envelope(const PulseProgram& program) {
  validate(program);
  PulseProgram out = program;
  for (PulseTrain& train : out.variants) {
    double total = 0.0;
    for (const PulseSegment& s : train) total += s.duration;
    double start = 0.0;
    for (PulseSegment& s : train) {
      s.amplitude *= envelope_value(program.envelope, start + 0.5 * s.duration, total);
      start += s.duration;
    }
  }
  return out;
}

Propagator smp_propagator(std::span<const PulseSegment> train, double omega_q, SpinSystem spin) {
  double total = 0.0;
  for (const PulseSegment& s : train) {
    if (!(s.duration > 0.0) || !(s.amplitude >= 0.0)) {
      throw std::invalid_argument("smp_propagator: invalid segment");
    }
    total += s.duration;
  }
  return Propagator(Operator(train_unitary(train, omega_q, spin)), total);
}

void validate(const SmpContext& context) {
  if (context.n_segments < 1) throw std::invalid_argument("smp: number of segments must be at least 1");
  if (context.eta < 1) throw std::invalid_argument("smp: eta must be at least 1");
  if (!(context.t_smp > 0.0)) throw std::invalid_argument("smp: t_smp must be positive");
  if (!(context.amplitude_scale > 0.0) || !(context.amplitude_cap >= context.amplitude_scale)) {
    throw std::invalid_argument("smp: need 0 < amplitude_scale <= amplitude_cap");
  }
  validate(context.envelope);
}

PulseProgram decode_parameters(std::span<const double> params, const SmpContext& context) {
  if (params.size() != context.parameter_count()) {
    throw std::invalid_argument("smp: expected " + std::to_string(context.parameter_count()) +
                                " parameters (2 eta N), got " + std::to_string(params.size()));
  }
  const double log_cap = std::log(context.amplitude_cap / context.amplitude_scale);
  const double dt = context.t_smp / context.n_segments;
  PulseProgram program;
  program.envelope = context.envelope;
  program.variants.resize(static_cast<std::size_t>(context.eta));
  std::size_t p = 0;
  for (PulseTrain& train : program.variants) {
    train.reserve(static_cast<std::size_t>(context.n_segments));
    for (int s = 0; s < context.n_segments; ++s) {
      const double log_amp = std::min(params[p], log_cap);
      const double phase = wrap_phase(params[p + 1]);
      p += 2;
      double amplitude = context.amplitude_scale * std::exp(log_amp);
      if (context.use_envelope) amplitude *= envelope_value(context.envelope, (s + 0.5) * dt, context.t_smp);
      train.push_back({amplitude, phase, dt});
    }
  }
  return program;
}

double program_fidelity(const PulseProgram& program, const Operator& target, double omega_q, SpinSystem spin) {
  if (target.dim() != spin.dim()) throw DimensionMismatch("smp: target dimension mismatch");
  return fidelity(Operator(averaged_image(program, omega_q, spin)), traceless_part(target));
}

double smp_objective(std::span<const double> params, const Operator& target, const SmpContext& context) {
  return program_fidelity(decode_parameters(params, context), target, context.omega_q, context.spin);
}

Operator default_smp_target(SpinSystem spin) {
  return coherent_state(spin, std::numbers::pi / 2.0, std::numbers::pi).projector();
}

SmpConfig desk_scale_config(double nu_q_hz) {
  SmpConfig config;
  config.context.omega_q = kTwoPi * nu_q_hz;
  config.context.n_segments = 16;
  config.context.eta = 2;
  config.context.t_smp = 2.0 / nu_q_hz;
  return config;
}

SmpConfig paper_scale_config(double nu_q_hz) {
  SmpConfig config = desk_scale_config(nu_q_hz);
  config.context.n_segments = 256;
  config.context.eta = 4;
  return config;
}

SmpResult optimize_smp(const Operator& target, const SmpConfig& config) {
  validate(config.context);
  if (config.restarts < 1) throw std::invalid_argument("smp: restarts must be at least 1");
  if (config.rounds < 1) throw std::invalid_argument("smp: rounds must be at least 1");
  const SmpContext& ctx = config.context;
  const Operator goal = target;
  const std::size_t n_params = ctx.parameter_count();

  // All starting points are drawn up front from one stream, so the outcome
  // does not depend on how restarts are scheduled.
  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(config.restarts), std::vector<double>(n_params));
  for (auto& x0 : starts) {
    for (std::size_t i = 0; i < n_params; i += 2) {
      x0[i] = -1.0 + 1.5 * uniform01(rng);  // amplitude between 0.37 and 1.65 x scale
      x0[i + 1] = kTwoPi * uniform01(rng);
    }
  }

  struct RestartOutcome {
    std::vector<double> x;
    double fidelity = -2.0;
    int iterations = 0;
    long evaluations = 0;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));

  const Objective negated = [&](std::span<const double> x) { return -smp_objective(x, goal, ctx); };
  auto run_restart = [&](std::size_t r) {
    RestartOutcome& out = outcomes[r];
    out.x = starts[r];
    NelderMeadOptions options;
    options.max_iterations = std::numeric_limits<int>::max();
    options.max_evaluations = config.evaluations_per_round;
    options.step = config.initial_step;
    for (int round = 0; round < config.rounds; ++round) {
      const NelderMeadResult nm = nelder_mead(negated, out.x, options);
      out.iterations += nm.iterations;
      out.evaluations += nm.evaluations;
      if (-nm.best_value > out.fidelity) {
        out.fidelity = -nm.best_value;
        out.x = nm.best_x;
      }
      if (out.fidelity >= config.stop_fidelity) break;
    }
  };

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(config.restarts)));
  if (workers == 1) {
    for (std::size_t r = 0; r < outcomes.size(); ++r) run_restart(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = next++; r < outcomes.size(); r = next++) run_restart(r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SmpResult result;
  result.seed = config.seed;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.restart_fidelities.push_back(outcomes[r].fidelity);
    result.evaluations += outcomes[r].evaluations;
    if (outcomes[r].fidelity > outcomes[static_cast<std::size_t>(result.best_restart)].fidelity) {
      result.best_restart = static_cast<int>(r);
    }
  }
  const RestartOutcome& best = outcomes[static_cast<std::size_t>(result.best_restart)];
  result.parameters = best.x;
  result.program = decode_parameters(best.x, ctx);
  result.achieved_fidelity = best.fidelity;
  result.iterations = best.iterations;
  result.below_threshold = best.fidelity < config.threshold;
  return result;
}

}  // namespace spinsq
