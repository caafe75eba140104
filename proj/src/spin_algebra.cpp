#include "spinsq/spin_algebra.hpp"

#include <cmath>
#include <memory>
#include <mutex>

namespace spinsq {

SpinSystem::SpinSystem(int two_i) : two_i_(two_i) {
  if (two_i < 0 || two_i > kMaxTwoI) {
    throw std::domain_error("spin: 2I must lie in [0, " + std::to_string(kMaxTwoI) + "], got " +
                            std::to_string(two_i));
  }
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::General: return "general";
    case OperatorKind::Hermitian: return "hermitian";
    case OperatorKind::Unitary: return "unitary";
    case OperatorKind::Density: return "density";
    case OperatorKind::Deviation: return "deviation";
  }
  return "unknown";
}

Operator::Operator(Matrix matrix, OperatorKind kind) : matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw DimensionMismatch("operator: matrix must be square and non-empty");
  }
  switch (kind_) {
    case OperatorKind::General:
      break;
    case OperatorKind::Hermitian:
    case OperatorKind::Deviation:
      if (!is_hermitian()) {
        throw std::invalid_argument("operator: claimed " + to_string(kind_) +
                                    " but hermiticity defect is " + std::to_string(hermiticity_defect()));
      }
      break;
    case OperatorKind::Density:
      if (!is_hermitian()) {
        throw std::invalid_argument("operator: density matrix is not Hermitian");
      }
      if (std::abs(trace() - 1.0) > Tolerance::kTrace) {
        throw std::invalid_argument("operator: density matrix trace is not 1");
      }
      break;
    case OperatorKind::Unitary:
      if (unitarity_defect() > Tolerance::kUnitary) {
        throw std::invalid_argument("operator: claimed unitary but unitarity defect is " +
                                    std::to_string(unitarity_defect()));
      }
      break;
  }
}

Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim), OperatorKind::Unitary); }

Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim), OperatorKind::Hermitian); }

double Operator::max_abs() const { return matrix_.cwiseAbs().maxCoeff(); }

double Operator::hermiticity_defect() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }

double Operator::unitarity_defect() const {
  return (matrix_.adjoint() * matrix_ - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian() const {
  return hermiticity_defect() <= Tolerance::kHermitian * std::max(1.0, max_abs());
}

bool Operator::is_diagonal(double tol) const {
  for (int c = 0; c < dim(); ++c) {
    for (int r = 0; r < dim(); ++r) {
      if (r != c && std::abs(matrix_(r, c)) > tol) return false;
    }
  }
  return true;
}

void require_same_dim(const Operator& a, const Operator& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()) + ")");
  }
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator+");
  return Operator(a.matrix() + b.matrix());
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator-");
  return Operator(a.matrix() - b.matrix());
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  return Operator(a.matrix() * b.matrix());
}

Operator operator*(complex s, const Operator& a) { return Operator(s * a.matrix()); }

Operator operator*(double s, const Operator& a) { return Operator(s * a.matrix()); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

AngularMomentum build_operators(SpinSystem spin) {
  const int d = spin.dim();
  const double casimir = spin.casimir();
  Matrix jz = Matrix::Zero(d, d);
  Matrix jplus = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = spin.m(i);
    jz(i, i) = m;
    // J+|m> lands on index i-1.
    if (i > 0) jplus(i - 1, i) = std::sqrt(casimir - m * (m + 1.0));
  }
  Matrix jminus = jplus.adjoint();
  Matrix jx = 0.5 * (jplus + jminus);
  Matrix jy = (jplus - jminus) / complex(0.0, 2.0);
  Matrix j2 = casimir * Matrix::Identity(d, d);
  return AngularMomentum{spin,
                         Operator(jx, OperatorKind::Hermitian),
                         Operator(jy, OperatorKind::Hermitian),
                         Operator(jz, OperatorKind::Hermitian),
                         Operator(j2, OperatorKind::Hermitian),
                         Operator(jplus),
                         Operator(jminus)};
}

Operator spherical_tensor(SpinSystem spin, int k, int q) {
  if (k < 0 || k > spin.two_i() || q < -k || q > k) {
    throw std::domain_error("spherical_tensor: (K, Q) = (" + std::to_string(k) + ", " + std::to_string(q) +
                            ") outside 0 <= K <= 2I, |Q| <= K");
  }
  const int d = spin.dim();
  const double norm = std::sqrt((2.0 * k + 1.0) / d);
  Matrix t = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int two_m = spin.two_m(col);
    const int two_mp = two_m + 2 * q;
    if (two_mp > spin.two_i() || two_mp < -spin.two_i()) continue;
    const int row = (spin.two_i() - two_mp) / 2;
    t(row, col) = norm * clebsch_gordan(spin.two_i(), two_m, 2 * k, 2 * q, spin.two_i(), two_mp);
  }
  return Operator(std::move(t));
}

TensorBasis::TensorBasis(SpinSystem spin) : spin_(spin) {
  tensors_.reserve(static_cast<std::size_t>(spin.dim() * spin.dim()));
  for (int k = 0; k <= spin.two_i(); ++k) {
    for (int q = -k; q <= k; ++q) tensors_.push_back(spherical_tensor(spin, k, q));
  }
}

const TensorBasis& tensor_basis(SpinSystem spin) {
  static std::array<std::once_flag, kMaxDim> flags;
  static std::array<std::unique_ptr<TensorBasis>, kMaxDim> bases;
  const auto slot = static_cast<std::size_t>(spin.two_i());
  std::call_once(flags[slot], [&] { bases[slot] = std::make_unique<TensorBasis>(spin); });
  return *bases[slot];
}

complex expectation(const Operator& rho, const Operator& obs) {
  require_same_dim(rho, obs, "expectation");
  // Tr{rho obs} without forming the product.
  return (rho.matrix().transpose().cwiseProduct(obs.matrix())).sum();
}

}  // namespace spinsq
