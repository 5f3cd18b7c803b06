// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "ymc/error.hpp"
#include "ymc/greens.hpp"
#include "ymc/random.hpp"

namespace ymc {
namespace {

LatticeField normalized_field(const Grid& g, std::uint64_t seed) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.amplitude = 0.5;
  return normalize_for_born(generate_field(g, 3, spec));
}

ColorScalarField zero_mean(ColorScalarField f) {
  const auto m = color_mean(f);
  for (std::size_t s = 0; s < f.grid().sites(); ++s)
    for (int a = 0; a < f.K(); ++a) f.at(s, a) -= m[static_cast<std::size_t>(a)];
  return f;
}

double max_abs_diff(const ColorScalarField& a, const ColorScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

TEST(Born, ZeroCouplingIsFreeInverse) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.0), normalized_field(g, 1));
  const ColorScalarField f = generate_scalar_field(g, 3, 2);
  const BornResult r = born_apply(L, f, 4);
  EXPECT_LT(max_abs_diff(laplacian(r.value), zero_mean(f)), 1e-12);
  for (double res : r.report.residuals) EXPECT_LT(res, 1e-12);
}

TEST(Born, ResidualDecayRateTracksCoupling) {
  const Grid g(4);
  const LatticeField A = normalized_field(g, 3);
  EXPECT_NEAR(born_spectral_radius(A), 1.0, 1e-8);
  for (double gc : {0.2, 0.3, 0.4}) {
    const FaddeevPopovOperator L(StructureConstants(gc), A);
    const BornResult r = born_apply(L, generate_scalar_field(g, 3, 4), 6);
    ASSERT_EQ(r.report.residuals.size(), 7u);
    EXPECT_FALSE(r.report.diverging);
    EXPECT_NEAR(r.report.fitted_ratio / gc, 1.0, 0.2) << "g = " << gc;
    for (std::size_t m = 1; m < r.report.residuals.size(); ++m) {
      EXPECT_LT(r.report.residuals[m], r.report.residuals[m - 1]);
    }
  }
}

TEST(Born, RejectsStrongCoupling) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(1.0), normalized_field(g, 1));
  EXPECT_THROW(born_apply(L, generate_scalar_field(g, 3, 2), 3), DomainError);
}

TEST(Born, DivergenceIsReported) {
  const Grid g(4);
  LatticeField A = normalized_field(g, 1);
  A *= 3.0;
  const FaddeevPopovOperator L(StructureConstants(0.9), A);
  BornOptions opts;
  opts.probes = 1;
  const BornResult r = born_apply(L, generate_scalar_field(g, 3, 2), 8, opts);
  EXPECT_TRUE(r.report.diverging);
  const GreensOperator G = GreensOperator::born(L, 8);
  EXPECT_THROW(G.apply(generate_scalar_field(g, 3, 2)), NumericalError);
}

TEST(Born, TransposeIsAdjoint) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), normalized_field(g, 5));
  const ColorScalarField u = generate_scalar_field(g, 3, 6), v = generate_scalar_field(g, 3, 7);
  BornOptions opts;
  opts.report = false;
  const double lhs = l2_inner(u, born_apply(L, v, 5, opts).value);
  const double rhs = l2_inner(born_apply_transpose(L, u, 5), v);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs) + 1e-14);
}

TEST(Greens, PseudoinverseDefect) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), normalized_field(g, 2));
  const GreensOperator G = GreensOperator::pseudoinverse(L);
  EXPECT_LT(green_defect(G, 3, 1), 1e-10);
  EXPECT_GE(G.kernel().size(), 3u);
  const Eigen::MatrixXd M = G.materialize();
  EXPECT_LT((M - M.transpose()).cwiseAbs().maxCoeff(), 1e-10 * M.cwiseAbs().maxCoeff());
  for (const auto& psi : G.kernel()) EXPECT_LT(l2_norm(G.apply(psi)), 1e-10);
}

TEST(Greens, BornApproachesPseudoinverse) {
  // ||G_born(n) - G_pinv|| shrinks like (g rho)^(n+1) with rho = 1.
  const Grid g(4);
  const LatticeField A = normalized_field(g, 2);
  const double gc = 0.3;
  const FaddeevPopovOperator L(StructureConstants(gc), A);
  const GreensOperator P = GreensOperator::pseudoinverse(L);
  const ColorScalarField q = generate_scalar_field(g, 3, 9);
  const ColorScalarField pq = P.apply(q);
  double prev = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const double d = l2_norm(GreensOperator::born(L, n).apply(q) - pq) / l2_norm(q);
    if (n > 2) {
      EXPECT_GT(d / prev, gc / 3.0);
      EXPECT_LT(d / prev, gc * 3.0);
    }
    prev = d;
  }
}

TEST(Greens, BornSymmetricWithComputedKernel) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.2), normalized_field(g, 8));
  const GreensOperator G = GreensOperator::born(L, 6, KernelSource::computed);
  const Eigen::MatrixXd M = G.materialize();
  EXPECT_LT((M - M.transpose()).cwiseAbs().maxCoeff(), 1e-12 * M.cwiseAbs().maxCoeff());
  EXPECT_LT(green_defect(G, 2, 3), 1e-3);
}

TEST(Greens, FreePointKernelMatchesModeSum) {
  const Grid g(4, 3.0);
  const FaddeevPopovOperator L(StructureConstants(0.0), LatticeField(g, 3));
  const GreensOperator G = GreensOperator::born(L, 0);
  const std::size_t y0 = g.site(1, 0, 2);
  for (std::size_t x0 : {g.site(0, 0, 0), g.site(1, 0, 2), g.site(3, 1, 2)}) {
    const Eigen::MatrixXd Gxy = green_point_kernel(G, x0, y0);
    // -(1/L^3) sum_{p != 0} cos(p (x - y)) / |p|^2.
    double expect = 0.0;
    const int N = g.N();
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          const double p[3] = {g.fundamental() * g.kappa(a), g.fundamental() * g.kappa(b),
                               g.fundamental() * g.kappa(c)};
          double phase = 0.0;
          for (int i = 0; i < 3; ++i) phase += p[i] * (g.position(x0, i) - g.position(y0, i));
          expect -= std::cos(phase) / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        }
    expect /= std::pow(g.L_box(), 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_NEAR(Gxy(a, b), a == b ? expect : 0.0, 1e-12);
  }
}

TEST(Greens, PointKernelReciprocity) {
  const Grid g(4);
  const FaddeevPopovOperator L(StructureConstants(0.3), normalized_field(g, 4));
  const GreensOperator G = GreensOperator::born(L, 8);
  const std::size_t x = g.site(1, 1, 1), y = g.site(0, 2, 3);
  EXPECT_LT((green_point_kernel(G, x, y) - green_point_kernel(G, y, x).transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Greens, ConstantBasisOrthonormal) {
  const auto basis = constant_basis(Grid(4, 2.0), 3);
  ASSERT_EQ(basis.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(l2_inner(basis[i], basis[j]), i == j ? 1.0 : 0.0, 1e-14);
}

}  // namespace
}  // namespace ymc
