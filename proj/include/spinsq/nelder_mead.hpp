#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spinsq {

/// Thrown when the objective returns NaN or infinity.
class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NelderMeadOptions {
  int max_iterations = 2000;
  long max_evaluations = 0;  // 0: no limit
  /// Stop when max_i |f_i - f_best| <= f_tolerance and the simplex fits in an
  /// x_tolerance box around the best vertex.
  double f_tolerance = 1e-12;
  double x_tolerance = 1e-10;
  /// Initial simplex offsets per coordinate; empty means `step` everywhere.
  std::vector<double> initial_step;
  double step = 0.1;
  /// Keep the best value after every iteration.
  bool record_history = false;
};

struct NelderMeadResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  std::vector<double> history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `objective` with the standard simplex method (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2). Deterministic for a given x0
/// and options.
NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> x0, const NelderMeadOptions& options);

}  // namespace spinsq
