#include "spinsq/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spinsq {
namespace {

constexpr double kReflection = 1.0;
constexpr double kExpansion = 2.0;
constexpr double kContraction = 0.5;
constexpr double kShrink = 0.5;

class Evaluator {
 public:
  Evaluator(const Objective& f, const NelderMeadOptions& options) : f_(f), options_(options) {}

  double operator()(std::span<const double> x) {
    ++count_;
    const double value = f_(x);
    if (!std::isfinite(value)) {
      std::string point;
      for (std::size_t i = 0; i < std::min<std::size_t>(x.size(), 8); ++i) {
        point += (i ? ", " : "") + std::to_string(x[i]);
      }
      if (x.size() > 8) point += ", ...";
      throw NonFiniteObjective("nelder_mead: objective returned " + std::to_string(value) + " at evaluation " +
                               std::to_string(count_) + " x = [" + point + "]");
    }
    return value;
  }

  long count() const { return count_; }
  bool exhausted() const { return options_.max_evaluations > 0 && count_ >= options_.max_evaluations; }

 private:
  const Objective& f_;
  const NelderMeadOptions& options_;
  long count_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");
  for (double v : x0) {
    if (!std::isfinite(v)) throw std::invalid_argument("nelder_mead: non-finite starting point");
  }
  if (!options.initial_step.empty() && options.initial_step.size() != n) {
    throw std::invalid_argument("nelder_mead: initial_step size does not match the dimension");
  }

  Evaluator eval(objective, options);
  std::vector<std::vector<double>> x(n + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = options.initial_step.empty() ? options.step : options.initial_step[i];
    x[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) f[i] = eval(x[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), second(n);
  auto point_along = [&](double coeff, const std::vector<double>& from, std::vector<double>& out) {
    // centroid + coeff (from - centroid)
    for (std::size_t c = 0; c < n; ++c) out[c] = centroid[c] + coeff * (from[c] - centroid[c]);
  };

  NelderMeadResult result;
  int iter = 0;
  for (;; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];
    if (options.record_history) result.history.push_back(f[best]);

    double f_spread = 0.0, x_spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      f_spread = std::max(f_spread, std::abs(f[i] - f[best]));
      for (std::size_t c = 0; c < n; ++c) x_spread = std::max(x_spread, std::abs(x[i][c] - x[best][c]));
    }
    if (f_spread <= options.f_tolerance && x_spread <= options.x_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations || eval.exhausted()) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = x[order[i]];
      for (std::size_t c = 0; c < n; ++c) centroid[c] += v[c];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    point_along(-kReflection, x[worst], trial);
    const double f_reflect = eval(trial);

    if (f_reflect < f[best]) {
      point_along(-kReflection * kExpansion, x[worst], second);
      const double f_expand = eval(second);
      if (f_expand < f_reflect) {
        x[worst] = second;
        f[worst] = f_expand;
      } else {
        x[worst] = trial;
        f[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < f[second_worst]) {
      x[worst] = trial;
      f[worst] = f_reflect;
      continue;
    }
    if (f_reflect < f[worst]) {
      point_along(-kReflection * kContraction, x[worst], second);
      const double f_contract = eval(second);
      if (f_contract <= f_reflect) {
        x[worst] = second;
        f[worst] = f_contract;
        continue;
      }
    } else {
      point_along(kContraction, x[worst], second);
      const double f_contract = eval(second);
      if (f_contract < f[worst]) {
        x[worst] = second;
        f[worst] = f_contract;
        continue;
      }
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t c = 0; c < n; ++c) x[i][c] = x[best][c] + kShrink * (x[i][c] - x[best][c]);
      f[i] = eval(x[i]);
    }
  }

  const auto best_it = std::min_element(f.begin(), f.end());
  const auto best = static_cast<std::size_t>(std::distance(f.begin(), best_it));
  result.best_x = x[best];
  result.best_value = f[best];
  result.iterations = iter;
  result.evaluations = eval.count();
  return result;
}

}  // namespace spinsq
