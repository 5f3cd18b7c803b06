// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ymc/faddeev_popov.hpp"

namespace ymc {

/// Residual history of a truncated Born series K_n = sum_{m<=n} (-g D V)^m D,
/// D = Delta^+ (pseudoinverse of the Laplacian, D = -free_green_apply).
struct BornSeriesReport {
  int n_terms = 0;
  /// residuals[m] = max over probes q of ||(L K_m - (I - P)) q|| / ||q||.
  std::vector<double> residuals;
  /// term_norms[m] = ||m-th series term applied to the input|| / ||input||.
  std::vector<double> term_norms;
  /// Least-squares slope of log r_m against m over m = 1..n, and exp(slope).
  double fitted_log_rate = 0.0;
  double fitted_ratio = 0.0;
  /// True when the term norms stop decreasing (series outside its radius).
  bool diverging = false;
};

struct BornOptions {
  int probes = 3;
  std::uint64_t probe_seed = 1;
  /// Skip the residual history (only the series sum is computed).
  bool report = true;
};

struct BornResult {
  ColorScalarField value;
  BornSeriesReport report;
};

/// K_n f. Throws DomainError for g >= 1; the operator itself enforces the
/// transverse gauge (GaugeError).
BornResult born_apply(const FaddeevPopovOperator& L, const ColorScalarField& f, int n_terms,
                      const BornOptions& opts = {});
BornResult born_apply(const StructureConstants& sc, const LatticeField& A, const ColorScalarField& f,
                      int n_terms, const BornOptions& opts = {});

/// K_n^T f.
ColorScalarField born_apply_transpose(const FaddeevPopovOperator& L, const ColorScalarField& f, int n_terms);

/// Spectral radius of Delta^+ V (unit coupling) via Lanczos on the symmetric
/// form (-Delta^+)^{1/2} V (-Delta^+)^{1/2}. The Born series converges for
/// g * radius < 1.
double born_spectral_radius(const FaddeevPopovOperator& L);
double born_spectral_radius(const LatticeField& A);

/// A scaled so that born_spectral_radius = 1 (A unchanged if the radius is 0).
LatticeField normalize_for_born(const LatticeField& A);

/// l2-orthonormal constant fields, one per color.
std::vector<ColorScalarField> constant_basis(const Grid& grid, int K);

enum class GreensMethod { born, pseudoinverse };
enum class KernelSource { constants, computed };

/// A modified Green's function of L: symmetric and L G = I - P_ker.
///
/// born:          G = (I - P) 1/2 (K_n + K_n^T) (I - P)
/// pseudoinverse: G = sum over |lambda| > zero_tol of psi psi^T / lambda
///                (dense; capacity limited).
class GreensOperator : public LatticeOperator {
 public:
  static GreensOperator born(const FaddeevPopovOperator& L, int n_terms,
                             KernelSource kernel = KernelSource::constants);
  static GreensOperator pseudoinverse(const FaddeevPopovOperator& L);

  const Grid& grid() const noexcept override { return L_->grid(); }
  int K() const noexcept override { return L_->K(); }
  ColorScalarField apply(const ColorScalarField& f) const override;
  ColorScalarField apply_adjoint(const ColorScalarField& f) const override { return apply(f); }

  GreensMethod method() const noexcept { return method_; }
  int n_terms() const noexcept { return n_terms_; }
  const std::vector<ColorScalarField>& kernel() const noexcept { return kernel_; }
  const FaddeevPopovOperator& op() const noexcept { return *L_; }

  /// (I - P_ker) f.
  ColorScalarField complement(const ColorScalarField& f) const { return project_out(kernel_, f); }

 private:
  GreensOperator() = default;

  std::shared_ptr<const FaddeevPopovOperator> L_;
  GreensMethod method_ = GreensMethod::born;
  int n_terms_ = 0;
  std::vector<ColorScalarField> kernel_;
  Eigen::MatrixXd dense_;
};

/// max over probes of ||(L G - (I - P)) q|| / ||q|| for seeded random probes.
double green_defect(const GreensOperator& G, int probes, std::uint64_t seed);

/// G^{ab}(x0, y0), obtained by applying G to delta sources of height
/// 1 / spacing^3 at y0.
Eigen::MatrixXd green_point_kernel(const GreensOperator& G, std::size_t x0, std::size_t y0);

}  // namespace ymc
