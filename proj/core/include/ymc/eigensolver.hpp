// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ymc/operator.hpp"

namespace ymc {

/// Eigenpairs of a symmetric operator. Eigenvalues ascend; eigenvectors
/// are l2-orthonormal; residuals[k] = ||L psi_k - lambda_k psi_k|| / ||psi_k||.
struct SpectralSlice {
  enum class Which { lowest, near_zero };

  std::vector<double> eigenvalues;
  std::vector<ColorScalarField> eigenvectors;
  std::vector<double> residuals;
  Which which = Which::near_zero;
};

using Preconditioner = std::function<ColorScalarField(const ColorScalarField&)>;

struct MinresReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned MINRES for (op - shift) x = b with a symmetric positive
/// definite preconditioner M ~ (op - shift)^-1. An empty M means identity.
ColorScalarField minres(const LatticeOperator& op, double shift, const ColorScalarField& b,
                        const Preconditioner& M, double rel_tol, int max_iterations,
                        MinresReport* report = nullptr);

struct EigenOptions {
  double eig_tol = 1e-8;
  /// Shift sigma of the shift-invert iteration.
  double shift = 0.0;
  int max_iterations = 300;
  /// Extra block columns beyond m; negative selects max(4, m / 2).
  int margin = -1;
  std::uint64_t seed = 1;
  double inner_tol = 1e-12;
  int inner_max_iterations = 2000;
};

/// The m eigenpairs of a symmetric operator nearest `shift` by block subspace
/// iteration on (L - shift)^-1 with Rayleigh-Ritz extraction. Inner solves use
/// preconditioned MINRES. The block grows when convergence stalls; throws
/// NumericalError with the residual report if no block size succeeds.
SpectralSlice shift_invert_spectrum(const LatticeOperator& op, int m, const Preconditioner& M,
                                    const EigenOptions& opts = {});

/// All eigenpairs of the symmetric part of the dense matrix. Test oracle for
/// dimension <= kDenseLimit.
SpectralSlice dense_spectrum(const LatticeOperator& op);

}  // namespace ymc
