// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ymc/lattice.hpp"

namespace ymc {

using cplx = std::complex<double>;

/// Largest dense tensor length accepted by symmetrize / antisymmetrize.
inline constexpr std::size_t kTensorLimit = 4096;

/// Symmetric Fock space over C^d truncated at n_max particles.
///
/// The basis of sector n is the set of non-decreasing index tuples
/// (i_1 <= ... <= i_n) in lexicographic order; tuple t stands for the
/// normalized occupation state prod_i (a_i^*)^{n_i} / sqrt(n_i!) Omega.
/// Inner products are conjugate-linear in the first argument.
class FockSpace {
 public:
  FockSpace(int d, int n_max);

  int d() const noexcept { return d_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t sector_dim(int n) const noexcept { return dims_[static_cast<std::size_t>(n)]; }
  std::size_t total_dim() const noexcept;

  /// Tuple of basis state r in sector n.
  std::span<const int> tuple(int n, std::size_t r) const noexcept;
  /// Lexicographic rank of a non-decreasing tuple.
  std::size_t rank(std::span<const int> t) const noexcept;
  /// Occupation numbers n_1..n_d of basis state r in sector n.
  std::vector<int> occupation(int n, std::size_t r) const;

 private:
  int d_;
  int n_max_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<int>> tuples_;  // per sector, flattened
};

/// State in a truncated Fock space. discarded_norm_sq accumulates the squared
/// norm pushed beyond n_max by creation operators.
struct FockVector {
  std::vector<Eigen::VectorXcd> sectors;
  double discarded_norm_sq = 0.0;

  static FockVector zero(const FockSpace& F);
  static FockVector vacuum(const FockSpace& F);

  double norm() const;
  FockVector& operator+=(const FockVector& o);
  FockVector& operator*=(cplx s);
  /// Largest sector index with a coefficient above tol in magnitude (-1 if none).
  int top_occupied(double tol = 0.0) const;
};

FockVector operator+(FockVector a, const FockVector& b);
FockVector operator-(FockVector a, const FockVector& b);
FockVector operator*(cplx s, FockVector a);

/// <u, v>.
cplx inner(const FockVector& u, const FockVector& v);
/// (f, g) = sum conj(f_i) g_i.
cplx inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

/// Flat coordinates, sectors concatenated in order.
Eigen::VectorXcd to_flat(const FockVector& v);
FockVector from_flat(const FockSpace& F, const Eigen::VectorXcd& x);

/// a(f) = sum_i conj(f_i) a_i (conjugate-linear in f).
FockVector annihilate(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v);
/// a^*(f) = sum_i f_i a_i^*; overflow from the top sector is discarded and its
/// squared norm added to discarded_norm_sq.
FockVector create(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v);
/// Phi_S(f) = (a(f) + a^*(f)) / sqrt 2 (real-linear in f).
FockVector segal_field(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v);
/// Phi_S(Re f) + i Phi_S(Im f), complex-linear in f.
FockVector field_map(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v);

/// Dense matrix of Phi_S(f) in flat coordinates.
Eigen::MatrixXcd segal_matrix(const FockSpace& F, const Eigen::VectorXcd& f);

/// Block-diagonal operator on a truncated Fock space (dGamma or Gamma).
class SecondQuantizedOperator {
 public:
  enum class Kind { dGamma, Gamma };

  SecondQuantizedOperator(Kind kind, std::vector<Eigen::MatrixXcd> blocks)
      : kind_(kind), blocks_(std::move(blocks)) {}

  Kind kind() const noexcept { return kind_; }
  const Eigen::MatrixXcd& sector(int n) const { return blocks_.at(static_cast<std::size_t>(n)); }
  int n_max() const noexcept { return static_cast<int>(blocks_.size()) - 1; }

  FockVector apply(const FockVector& v) const;
  /// Block-diagonal dense matrix in flat coordinates.
  Eigen::MatrixXcd dense() const;

 private:
  Kind kind_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Sector n block = sum_{ij} A_ij a_i^* a_j. Throws DomainError when A is not
/// self-adjoint to tol.
SecondQuantizedOperator dGamma(const FockSpace& F, const Eigen::MatrixXcd& A, double tol = 1e-12);
/// Sector n block = (tensor power of U) on the symmetric subspace. Throws
/// DomainError when U is not unitary to tol.
SecondQuantizedOperator Gamma(const FockSpace& F, const Eigen::MatrixXcd& U, double tol = 1e-12);

/// All sums lambda_{i_1} + ... + lambda_{i_n} over multisets of eig(A), sorted.
std::vector<double> dGamma_spectrum(const Eigen::MatrixXcd& A, int n, double tol = 1e-12);

/// Projection of a dense tensor in (C^d)^{tensor n} (index i_1 most
/// significant) onto the symmetric / antisymmetric subspace. Throws
/// CapacityError when d^n > 4096 or n > 6.
Eigen::VectorXcd symmetrize(const Eigen::VectorXcd& v, int d, int n);
Eigen::VectorXcd antisymmetrize(const Eigen::VectorXcd& v, int d, int n);

/// One-particle vector of the smeared field functional phi -> int phi A^a_mu
/// on the lattice surrogate C^{N^3 * 4 * K}, index (site * 4 + mu) * K + a.
/// Spatial components (mu = 1..3) are transversally projected; entries carry
/// the weight spacing^{3/2} so that the Euclidean pairing is the l2 pairing.
Eigen::VectorXcd smeared_field_vector(const Grid& grid, int K, std::span<const double> phi, int mu, int a);

}  // namespace ymc
