// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ymc/error.hpp"
#include "ymc/faddeev_popov.hpp"
#include "ymc/random.hpp"

namespace ymc {
namespace {

LatticeField field(const Grid& g, std::uint64_t seed, bool transverse = true, double amp = 0.5, int p_max = 1,
                   SpectrumShape shape = SpectrumShape::white) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.amplitude = amp;
  spec.transverse = transverse;
  spec.p_max = p_max;
  spec.shape = shape;
  return generate_field(g, 3, spec);
}

double asymmetry(const Eigen::MatrixXd& M) { return (M - M.transpose()).cwiseAbs().maxCoeff(); }

TEST(FaddeevPopov, ZeroCouplingIsLaplacian) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.0), field(g, 1));
  const ColorScalarField f = generate_scalar_field(g, 3, 2);
  const ColorScalarField a = L.apply(f), b = laplacian(f);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.data()[i], b.data()[i], 1e-12);
}

TEST(FaddeevPopov, SymmetricForTransverseField) {
  const Grid g(4);
  for (double gc : {0.1, 0.3}) {
    const FaddeevPopovOperator L(StructureConstants(gc), field(g, 3));
    const Eigen::MatrixXd M = L.materialize();
    EXPECT_LT(asymmetry(M), 1e-10 * M.cwiseAbs().maxCoeff());
  }
}

TEST(FaddeevPopov, LongitudinalControlIsAsymmetric) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), field(g, 3, false), GaugeCheck::skip);
  EXPECT_GT(asymmetry(L.materialize()), 1e-4);
  EXPECT_THROW(FaddeevPopovOperator(StructureConstants(0.3), field(g, 3, false)), GaugeError);
}

TEST(FaddeevPopov, AdjointIsTranspose) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), field(g, 3, false), GaugeCheck::skip);
  const Eigen::MatrixXd M = L.materialize();
  const ColorScalarField f = generate_scalar_field(g, 3, 5);
  EXPECT_LT((M.transpose() * to_vector(f) - to_vector(L.apply_adjoint(f))).norm(), 1e-11);
}

TEST(FaddeevPopov, PerturbationMatchesPointwiseProduct) {
  // With A and f band-limited to |kappa| <= 1 on N = 8, the product A d f
  // lies inside the kept window, so V equals the plain real-space product.
  const Grid g(8);
  const LatticeField A = field(g, 7, true, 0.5, 1, SpectrumShape::band_limited);
  const FaddeevPopovOperator L(StructureConstants(1.0), A);
  ColorScalarField f = generate_scalar_field(g, 3, 8);
  {
    LatticeField wrap(g, 3);
    for (std::size_t s = 0; s < g.sites(); ++s)
      for (int a = 0; a < 3; ++a) wrap.at(s, a, 0) = f.at(s, a);
    wrap = band_limit(wrap, 1);
    for (std::size_t s = 0; s < g.sites(); ++s)
      for (int a = 0; a < 3; ++a) f.at(s, a) = wrap.at(s, a, 0);
  }
  const std::array<ColorScalarField, 3> df{spectral_derivative(f, 0), spectral_derivative(f, 1),
                                           spectral_derivative(f, 2)};
  const ColorScalarField V = L.apply_perturbation(f);
  for (std::size_t s = 0; s < g.sites(); ++s)
    for (int a = 0; a < 3; ++a) {
      double expect = 0.0;
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          const int e = levi_civita(a, c, b);
          if (e == 0) continue;
          for (int k = 0; k < 3; ++k) expect += e * A.at(s, c, k) * df[static_cast<std::size_t>(k)].at(s, b);
        }
      EXPECT_NEAR(V.at(s, a), expect, 1e-12);
    }
}

TEST(FaddeevPopov, LinearInCouplingAndField) {
  const Grid g(4);
  const LatticeField A = field(g, 2);
  const ColorScalarField f = generate_scalar_field(g, 3, 3);
  const FaddeevPopovOperator L1(StructureConstants(0.2), A), L2(StructureConstants(0.2), 2.0 * A);
  const ColorScalarField v1 = L1.apply_perturbation(f), v2 = L2.apply_perturbation(f);
  for (std::size_t i = 0; i < v1.size(); ++i) EXPECT_NEAR(v2.data()[i], 2.0 * v1.data()[i], 1e-13);
  const FaddeevPopovOperator L3(StructureConstants(0.6), A);
  const ColorScalarField d = L3.apply(f) - L1.apply(f);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d.data()[i], 0.4 * v1.data()[i], 1e-12);
}

TEST(FaddeevPopov, ConstantsAreInKernel) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), field(g, 4));
  ColorScalarField c(g, 3);
  for (std::size_t s = 0; s < g.sites(); ++s) c.at(s, 1) = 1.0;
  const auto out = L.apply(c);
  for (double x : out.data()) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(FaddeevPopov, LowSpectrumMatchesDense) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), field(g, 5));
  SpectralSlice dense = dense_spectrum(L);
  const int m = 8;
  const SpectralSlice it = low_spectrum(L, m);
  ASSERT_EQ(it.eigenvalues.size(), static_cast<std::size_t>(m));
  // Oracle: the m dense eigenvalues nearest the solver's shift.
  const double sigma = -1e-3 * g.fundamental() * g.fundamental();
  std::vector<double> ev = dense.eigenvalues;
  std::sort(ev.begin(), ev.end(), [&](double a, double b) { return std::abs(a - sigma) < std::abs(b - sigma); });
  ev.resize(m);
  std::sort(ev.begin(), ev.end());
  for (int k = 0; k < m; ++k) {
    EXPECT_NEAR(it.eigenvalues[static_cast<std::size_t>(k)], ev[static_cast<std::size_t>(k)], 1e-8);
    EXPECT_LT(it.residuals[static_cast<std::size_t>(k)], 1e-8);
  }
  EXPECT_THROW(low_spectrum(L, 1000), DomainError);
}

TEST(FaddeevPopov, KernelBasisContainsConstants) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.2), field(g, 6));
  const auto basis = kernel_basis(L);
  ASSERT_GE(basis.size(), 3u);
  ColorScalarField c(g, 3);
  for (std::size_t s = 0; s < g.sites(); ++s) c.at(s, 2) = 1.0;
  EXPECT_LT(l2_norm(project_out(basis, c)), 1e-8 * l2_norm(c));
  for (const auto& psi : basis) EXPECT_LT(l2_norm(L.apply(psi)), L.zero_tol() * l2_norm(psi) + 1e-12);
}

TEST(FaddeevPopov, PreconditionerIsInverseShiftedLaplacian) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.2), field(g, 6));
  const auto M = L.laplace_preconditioner(0.5);
  const ColorScalarField f = generate_scalar_field(g, 3, 1);
  ColorScalarField back = laplacian(M(f));
  back *= -1.0;
  back.axpy(0.5, M(f));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(back.data()[i], f.data()[i], 1e-12);
}

}  // namespace
}  // namespace ymc
