#pragma once

// Angular-momentum operators, irreducible spherical tensors and expectation
// values for a single spin I.
//
// Basis convention: index 0 is |I,I>, index d-1 is |I,-I> (descending m).
// Units: hbar = 1, so Hamiltonians are angular frequencies (rad/s).

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace spinsq {

using complex = std::complex<double>;

/// Largest supported 2I. Keeps every operator in fixed-capacity storage.
inline constexpr int kMaxTwoI = 14;
inline constexpr int kMaxDim = kMaxTwoI + 1;

using Matrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vector = Eigen::Matrix<complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical consistency check fails (e.g. a negative variance).
class NumericalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spin quantum number stored as 2I so half-integer spins are exact.
class SpinSystem {
 public:
  explicit SpinSystem(int two_i);

  int two_i() const { return two_i_; }
  int dim() const { return two_i_ + 1; }
  double spin() const { return 0.5 * two_i_; }
  double casimir() const { return spin() * (spin() + 1.0); }

  /// Magnetic quantum number of basis index `index` (0 -> I).
  double m(int index) const { return 0.5 * (two_i_ - 2 * index); }
  /// 2m for basis index `index`.
  int two_m(int index) const { return two_i_ - 2 * index; }

  bool operator==(const SpinSystem&) const = default;

 private:
  int two_i_;
};

/// Semantic tag carried by an Operator. Claimed tags are verified when the
/// operator is constructed.
enum class OperatorKind {
  General,
  Hermitian,
  Unitary,
  Density,    // Hermitian, trace 1
  Deviation,  // Hermitian, any trace (e.g. Iz, or a trace-1 pure-state deviation)
};

std::string to_string(OperatorKind kind);

struct Tolerance {
  /// Hermiticity: max|M - M^dagger| relative to max(1, max|M|).
  static constexpr double kHermitian = 1e-12;
  static constexpr double kUnitary = 1e-10;
  static constexpr double kTrace = 1e-10;
};

/// Dense d x d complex matrix in the fixed descending-m basis.
class Operator {
 public:
  explicit Operator(Matrix matrix, OperatorKind kind = OperatorKind::General);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  OperatorKind kind() const { return kind_; }
  complex operator()(int row, int col) const { return matrix_(row, col); }

  complex trace() const { return matrix_.trace(); }
  Operator adjoint() const { return Operator(matrix_.adjoint()); }
  /// Same matrix under a new (verified) tag.
  Operator as(OperatorKind kind) const { return Operator(matrix_, kind); }

  double max_abs() const;
  double hermiticity_defect() const;
  double unitarity_defect() const;
  bool is_hermitian() const;
  bool is_diagonal(double tol = 0.0) const;

 private:
  Matrix matrix_;
  OperatorKind kind_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(complex s, const Operator& a);
Operator operator*(double s, const Operator& a);

/// Commutator [a, b].
Operator commutator(const Operator& a, const Operator& b);
/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Operator& a, const Operator& b);

void require_same_dim(const Operator& a, const Operator& b, const char* where);

struct AngularMomentum {
  SpinSystem spin;
  Operator jx, jy, jz, j2, jplus, jminus;
};

/// Jz, J+/-, Jx = (J+ + J-)/2, Jy = (J+ - J-)/(2i), J^2 = I(I+1) 1.
AngularMomentum build_operators(SpinSystem spin);

/// <j1 m1; j2 m2 | J M> with Condon-Shortley phases, all arguments doubled.
/// Evaluated in exact rational arithmetic; zero when selection rules fail.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Orthonormal irreducible tensor T_KQ:
/// <I m'|T_KQ|I m> = <I m; K Q|I m'> sqrt((2K+1)/(2I+1)).
/// Throws std::domain_error unless 0 <= K <= 2I and |Q| <= K.
Operator spherical_tensor(SpinSystem spin, int k, int q);

/// All (2I+1)^2 tensors of one spin, built once and shared read-only.
class TensorBasis {
 public:
  explicit TensorBasis(SpinSystem spin);

  SpinSystem spin() const { return spin_; }
  int max_rank() const { return spin_.two_i(); }
  const Operator& operator()(int k, int q) const { return tensors_[index(k, q)]; }
  static int index(int k, int q) { return k * k + k + q; }
  int size() const { return static_cast<int>(tensors_.size()); }

 private:
  SpinSystem spin_;
  std::vector<Operator> tensors_;
};

/// Process-wide cached basis for `spin`. Thread-safe.
const TensorBasis& tensor_basis(SpinSystem spin);

/// Tr{rho obs}.
complex expectation(const Operator& rho, const Operator& obs);

}  // namespace spinsq
