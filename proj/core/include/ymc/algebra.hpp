// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ymc {

/// Levi-Civita symbol on 0-based indices {0,1,2}: the sign of the permutation
/// (0,1,2) -> (a,b,c), or 0 when an index repeats. Throws DomainError for
/// indices outside {0,1,2}.
int levi_civita(int a, int b, int c);

/// Structure constants C^c_{ab} = g * eps^c_{ab} of the color algebra.
///
/// Only the su(2)-shaped table K = 3 is supported; the coupling g must be
/// finite and non-negative. g = 0 is accepted and yields the abelian limit.
class StructureConstants {
 public:
  explicit StructureConstants(double g, int K = 3);

  int K() const noexcept { return K_; }
  double g() const noexcept { return g_; }

  /// C^c_{ab}, 0-based.
  double operator()(int c, int a, int b) const noexcept {
    return table_[static_cast<std::size_t>((c * K_ + a) * K_ + b)];
  }

  /// Same algebra with a different coupling.
  StructureConstants with_coupling(double g) const { return StructureConstants(g, K_); }

 private:
  int K_;
  double g_;
  std::vector<double> table_;
};

/// w_c = sum_{a,b} C^c_{ab} u_a v_b.
std::vector<double> commutator(const StructureConstants& sc, std::span<const double> u,
                               std::span<const double> v);

/// Largest |Jacobi-identity residual| over all index quadruples.
double jacobi_residual(const StructureConstants& sc);

using Matrix2c = Eigen::Matrix2cd;
using LorentzMatrix = Eigen::Matrix4d;

/// Minkowski metric diag(+1,-1,-1,-1).
LorentzMatrix minkowski_metric();

/// Hermitian matrix X(x) = [[x0+x3, x1-i x2], [x1+i x2, x0-x3]].
Matrix2c hermitian_from_vector(const Eigen::Vector4d& x);

/// Inverse of hermitian_from_vector (takes the hermitian part).
Eigen::Vector4d vector_from_hermitian(const Matrix2c& X);

/// The spinor covering map SL(2,C) -> SO+(1,3): the unique Lambda with
/// X(Lambda x) = P X(x) P^*. Rejects |det P - 1| > tol with DomainError.
LorentzMatrix spinor_map(const Matrix2c& P, double tol = 1e-12);

/// True when Lambda^T eta Lambda = eta, det = +1 and Lambda^0_0 >= 1 within tol.
bool is_proper_orthochronous(const LorentzMatrix& lambda, double tol = 1e-12);

}  // namespace ymc
