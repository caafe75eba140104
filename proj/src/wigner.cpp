#include "spinsq/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinsq {
namespace {

constexpr int kMaxHarmonicDegree = kMaxTwoI;
constexpr double kImagTolerance = 1e-9;

// Orthonormalized associated Legendre values p[l][m] = N_lm P_l^m(x), 0 <= m <= l,
// with the Condon-Shortley phase, so Y_lm = p[l][m] e^{i m phi}.
class LegendreTable {
 public:
  LegendreTable(int lmax, double x) : lmax_(lmax), values_(static_cast<std::size_t>((lmax + 1) * (lmax + 1)), 0.0) {
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 0; m <= lmax; ++m) {
      if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
      at(m, m) = pmm;
      if (m == lmax) break;
      at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * pmm;
      for (int l = m + 2; l <= lmax; ++l) {
        const double a_l = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
        const double a_lm1 = std::sqrt((4.0 * (l - 1) * (l - 1) - 1.0) /
                                       (static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m));
        at(l, m) = a_l * (x * at(l - 1, m) - at(l - 2, m) / a_lm1);
      }
    }
  }

  double operator()(int l, int m) const { return values_[static_cast<std::size_t>(l * (lmax_ + 1) + m)]; }

 private:
  double& at(int l, int m) { return values_[static_cast<std::size_t>(l * (lmax_ + 1) + m)]; }

  int lmax_;
  std::vector<double> values_;
};

}  // namespace

MultipoleCoeffs::MultipoleCoeffs(SpinSystem spin, std::vector<complex> coeffs)
    : spin_(spin), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(spin.dim() * spin.dim())) {
    throw DimensionMismatch("multipoles: expected (2I+1)^2 coefficients");
  }
}

Operator MultipoleCoeffs::reconstruct() const {
  const TensorBasis& basis = tensor_basis(spin_);
  Matrix m = Matrix::Zero(spin_.dim(), spin_.dim());
  for (int k = 0; k <= max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) m += (*this)(k, q) * basis(k, q).matrix();
  }
  return Operator(std::move(m));
}

MultipoleCoeffs multipoles(const Operator& rho) {
  if (rho.dim() - 1 > kMaxTwoI) throw DimensionMismatch("multipoles: dimension exceeds supported spin");
  const SpinSystem spin(rho.dim() - 1);
  const TensorBasis& basis = tensor_basis(spin);
  std::vector<complex> coeffs(static_cast<std::size_t>(basis.size()));
  for (int k = 0; k <= spin.two_i(); ++k) {
    for (int q = -k; q <= k; ++q) {
      // Tr{rho T^dagger} = sum_ij rho_ij conj(T_ij).
      coeffs[static_cast<std::size_t>(TensorBasis::index(k, q))] =
          (rho.matrix().array() * basis(k, q).matrix().conjugate().array()).sum();
    }
  }
  return MultipoleCoeffs(spin, std::move(coeffs));
}

complex spherical_harmonic(int k, int q, double theta, double phi) {
  if (k < 0 || k > kMaxHarmonicDegree || q < -k || q > k) {
    throw std::domain_error("spherical_harmonic: invalid (K, Q) = (" + std::to_string(k) + ", " + std::to_string(q) +
                            ")");
  }
  const LegendreTable p(k, std::cos(theta));
  const int m = std::abs(q);
  const complex y = p(k, m) * std::polar(1.0, m * phi);
  if (q >= 0) return y;
  return (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
  GaussLegendre rule{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // One more derivative evaluation at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = x;
    rule.nodes[hi] = -x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

WignerGrid::WignerGrid(std::vector<double> thetas, std::vector<double> theta_weights, std::vector<double> phis,
                       std::vector<double> values)
    : thetas_(std::move(thetas)),
      theta_weights_(std::move(theta_weights)),
      phis_(std::move(phis)),
      values_(std::move(values)) {
  if (thetas_.empty() || phis_.empty() || theta_weights_.size() != thetas_.size() ||
      values_.size() != thetas_.size() * phis_.size()) {
    throw std::invalid_argument("WignerGrid: inconsistent sizes");
  }
}

double WignerGrid::weight(int i_theta, int /*i_phi*/) const {
  return theta_weights_[static_cast<std::size_t>(i_theta)] * 2.0 * std::numbers::pi / n_phi();
}

std::pair<int, int> WignerGrid::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] > values_[best]) best = i;
  }
  return {static_cast<int>(best) / n_phi(), static_cast<int>(best) % n_phi()};
}

std::pair<int, int> WignerGrid::nearest_node(double theta, double phi) const {
  const double tx = std::sin(theta) * std::cos(phi), ty = std::sin(theta) * std::sin(phi), tz = std::cos(theta);
  std::pair<int, int> best{0, 0};
  double best_dot = -2.0;
  for (int i = 0; i < n_theta(); ++i) {
    const double st = std::sin(thetas_[static_cast<std::size_t>(i)]);
    const double ct = std::cos(thetas_[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_phi(); ++j) {
      const double p = phis_[static_cast<std::size_t>(j)];
      const double dot = st * std::cos(p) * tx + st * std::sin(p) * ty + ct * tz;
      if (dot > best_dot) {
        best_dot = dot;
        best = {i, j};
      }
    }
  }
  return best;
}

WignerGrid wigner_map(const Operator& rho, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::domain_error("wigner_map: grid sizes must be positive");
  if (!rho.is_hermitian()) throw std::invalid_argument("wigner_map: state is not Hermitian");
  const MultipoleCoeffs coeffs = multipoles(rho);
  const int kmax = coeffs.max_rank();
  const double prefactor = std::sqrt(rho.dim() / (4.0 * std::numbers::pi));

  const GaussLegendre rule = gauss_legendre(n_theta);
  std::vector<double> thetas(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) thetas[static_cast<std::size_t>(i)] = std::acos(rule.nodes[static_cast<std::size_t>(i)]);
  std::vector<double> phis(static_cast<std::size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j) phis[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / n_phi;

  // e^{i Q phi_j} for Q = 0..kmax.
  std::vector<complex> phase(static_cast<std::size_t>(n_phi * (kmax + 1)));
  for (int j = 0; j < n_phi; ++j) {
    for (int q = 0; q <= kmax; ++q) phase[static_cast<std::size_t>(j * (kmax + 1) + q)] = std::polar(1.0, q * phis[static_cast<std::size_t>(j)]);
  }

  std::vector<double> values(static_cast<std::size_t>(n_theta * n_phi));
  double worst_imag = 0.0;
  std::vector<complex> radial(static_cast<std::size_t>(2 * kmax + 1));
  for (int i = 0; i < n_theta; ++i) {
    const LegendreTable p(kmax, rule.nodes[static_cast<std::size_t>(i)]);
    // Collapse the K sum per Q: radial[Q] = sum_K rho_KQ p_K|Q| (times (-1)^Q for Q < 0).
    for (int q = -kmax; q <= kmax; ++q) {
      const int m = std::abs(q);
      const double sign = (q < 0 && m % 2 == 1) ? -1.0 : 1.0;
      complex acc = 0.0;
      for (int k = m; k <= kmax; ++k) acc += coeffs(k, q) * p(k, m);
      radial[static_cast<std::size_t>(q + kmax)] = sign * acc;
    }
    for (int j = 0; j < n_phi; ++j) {
      complex w = radial[static_cast<std::size_t>(kmax)];
      for (int q = 1; q <= kmax; ++q) {
        const complex e = phase[static_cast<std::size_t>(j * (kmax + 1) + q)];
        w += radial[static_cast<std::size_t>(kmax + q)] * e + radial[static_cast<std::size_t>(kmax - q)] * std::conj(e);
      }
      w *= prefactor;
      worst_imag = std::max(worst_imag, std::abs(w.imag()));
      values[static_cast<std::size_t>(i * n_phi + j)] = w.real();
    }
  }
  if (worst_imag > kImagTolerance) {
    throw NumericalInconsistency("wigner_map: imaginary residue " + std::to_string(worst_imag));
  }
  return WignerGrid(std::move(thetas), rule.weights, std::move(phis), std::move(values));
}

double sphere_integral(const WignerGrid& grid) {
  double total = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    double row = 0.0;
    for (int j = 0; j < grid.n_phi(); ++j) row += grid.value(i, j);
    total += grid.weight(i, 0) * row;
  }
  return total;
}

}  // namespace spinsq
