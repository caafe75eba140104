#pragma once

// Multipole (rho_KQ) decomposition and the spin Wigner function on the unit
// sphere,
//   W(theta, phi) = sqrt((2I+1)/4pi) sum_{K,Q} rho_KQ Y_KQ(theta, phi),
//   rho_KQ = Tr{rho T_KQ^dagger},
// sampled on a Gauss-Legendre (in cos theta) x uniform (in phi) grid.

#include <vector>

#include "spinsq/spin_algebra.hpp"

namespace spinsq {

class MultipoleCoeffs {
 public:
  MultipoleCoeffs(SpinSystem spin, std::vector<complex> coeffs);

  SpinSystem spin() const { return spin_; }
  int max_rank() const { return spin_.two_i(); }
  complex operator()(int k, int q) const { return coeffs_.at(static_cast<std::size_t>(TensorBasis::index(k, q))); }
  const std::vector<complex>& data() const { return coeffs_; }

  /// sum_KQ rho_KQ T_KQ.
  Operator reconstruct() const;

 private:
  SpinSystem spin_;
  std::vector<complex> coeffs_;
};

MultipoleCoeffs multipoles(const Operator& rho);

/// Orthonormal Y_KQ with the Condon-Shortley phase, K <= 14.
complex spherical_harmonic(int k, int q, double theta, double phi);

struct GaussLegendre {
  std::vector<double> nodes;    // in (-1, 1), descending
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussLegendre gauss_legendre(int n);

class WignerGrid {
 public:
  WignerGrid(std::vector<double> thetas, std::vector<double> theta_weights, std::vector<double> phis,
             std::vector<double> values);

  int n_theta() const { return static_cast<int>(thetas_.size()); }
  int n_phi() const { return static_cast<int>(phis_.size()); }
  const std::vector<double>& thetas() const { return thetas_; }
  const std::vector<double>& phis() const { return phis_; }
  double value(int i_theta, int i_phi) const { return values_[static_cast<std::size_t>(i_theta * n_phi() + i_phi)]; }
  /// Solid-angle quadrature weight of node (i_theta, i_phi).
  double weight(int i_theta, int i_phi) const;
  const std::vector<double>& values() const { return values_; }

  /// Node index (i_theta, i_phi) of the largest value.
  std::pair<int, int> argmax() const;
  /// Node nearest to the direction (theta, phi) by great-circle distance.
  std::pair<int, int> nearest_node(double theta, double phi) const;

 private:
  std::vector<double> thetas_;
  std::vector<double> theta_weights_;
  std::vector<double> phis_;
  std::vector<double> values_;
};

inline constexpr int kDefaultWignerTheta = 64;
inline constexpr int kDefaultWignerPhi = 128;

/// Synthesizes W on an n_theta x n_phi grid. Throws for non-Hermitian rho or
/// if the synthesis leaves an imaginary residue above 1e-9.
WignerGrid wigner_map(const Operator& rho, int n_theta = kDefaultWignerTheta, int n_phi = kDefaultWignerPhi);

/// Gauss-Legendre x trapezoid quadrature of W over the sphere.
double sphere_integral(const WignerGrid& grid);

}  // namespace spinsq
