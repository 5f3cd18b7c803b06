// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "ymc/algebra.hpp"
#include "ymc/eigensolver.hpp"
#include "ymc/operator.hpp"

namespace ymc {

inline constexpr double kGaugeTol = 1e-8;
inline constexpr double kEigTol = 1e-8;

enum class GaugeCheck { enforce, skip };

/// L^{ab} f^b = Delta f^a + g V^{ab} f^b with
/// V^{ab} f^b = sum_c eps^{acb} P_W[A^c_k d_k f^b].
///
/// P_W keeps the Fourier modes with every |kappa_j| <= N/2 - 1. Both A and f
/// are restricted to W and the product is evaluated on a zero-padded 2N grid,
/// so it is alias-free; for transverse A the discrete operator is then
/// exactly symmetric. See docs/conventions.md.
class FaddeevPopovOperator : public LatticeOperator {
 public:
  /// Throws GaugeError when check is enforce and coulomb_residual(A) >= gauge_tol.
  FaddeevPopovOperator(const StructureConstants& sc, const LatticeField& A,
                       GaugeCheck check = GaugeCheck::enforce, double gauge_tol = kGaugeTol);

  const Grid& grid() const noexcept override { return grid_; }
  int K() const noexcept override { return K_; }
  const StructureConstants& structure_constants() const noexcept { return sc_; }
  double g() const noexcept { return sc_.g(); }
  const LatticeField& potential() const noexcept { return A_; }

  ColorScalarField apply(const ColorScalarField& f) const override;
  ColorScalarField apply_adjoint(const ColorScalarField& f) const override;

  /// V f (unit coupling) and its l2 adjoint.
  ColorScalarField apply_perturbation(const ColorScalarField& f) const;
  ColorScalarField apply_perturbation_adjoint(const ColorScalarField& f) const;

  /// Upper estimate of the operator norm: max |p|^2 + g * sum_k max|A_k| * p_max.
  double norm_estimate() const noexcept { return norm_est_; }
  double zero_tol() const noexcept { return 1e-6 * norm_est_; }

  /// Spectral (-Delta + delta)^-1, SPD.
  Preconditioner laplace_preconditioner(double delta) const;

 private:
  StructureConstants sc_;
  Grid grid_;
  int K_;
  LatticeField A_;
  int n2_;                                    // padded grid size 2N
  std::vector<std::array<std::vector<double>, 3>> A_pad_;  // [c][k] on 2N grid
  double norm_est_ = 0.0;
};

/// The m eigenpairs nearest zero (shift-invert subspace iteration with
/// sigma = -1e-3 (2 pi / L_box)^2). Throws DomainError when m > N^3 K.
SpectralSlice low_spectrum(const FaddeevPopovOperator& L, int m, const EigenOptions& opts = {});

/// Orthonormal basis of {psi : |lambda| <= zero_tol}. Grows the request until
/// a non-kernel eigenvalue is seen.
std::vector<ColorScalarField> kernel_basis(const FaddeevPopovOperator& L, const EigenOptions& opts = {});

/// u - sum_n <psi_n, u> psi_n.
ColorScalarField project_out(const std::vector<ColorScalarField>& basis, const ColorScalarField& u);

}  // namespace ymc
