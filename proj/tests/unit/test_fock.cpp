// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ymc/error.hpp"
#include "ymc/fock.hpp"
#include "ymc/random.hpp"

namespace ymc {
namespace {

Eigen::VectorXcd rand_vec(SplitMix64& rng, int d) {
  Eigen::VectorXcd f(d);
  for (int i = 0; i < d; ++i) f[i] = {rng.symmetric(1.0), rng.symmetric(1.0)};
  return f;
}

FockVector rand_state(SplitMix64& rng, const FockSpace& F, int top) {
  FockVector v = FockVector::zero(F);
  for (int n = 0; n <= top; ++n)
    for (auto& x : v.sectors[static_cast<std::size_t>(n)]) x = {rng.symmetric(1.0), rng.symmetric(1.0)};
  return v;
}

Eigen::MatrixXcd rand_hermitian(SplitMix64& rng, int d) {
  Eigen::MatrixXcd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = {rng.symmetric(1.0), rng.symmetric(1.0)};
  return 0.5 * (M + M.adjoint());
}

long binom(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

TEST(FockSpace, DimensionsAndRanks) {
  const FockSpace F(4, 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(F.sector_dim(n), static_cast<std::size_t>(binom(4 + n - 1, n)));
  EXPECT_EQ(F.total_dim(), 1u + 4u + 10u + 20u);
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> prev;
    for (std::size_t r = 0; r < F.sector_dim(n); ++r) {
      const auto t = F.tuple(n, r);
      std::vector<int> cur(t.begin(), t.end());
      EXPECT_TRUE(std::is_sorted(cur.begin(), cur.end()));
      if (!prev.empty()) EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
      EXPECT_EQ(F.rank(t), r);
      prev = cur;
    }
  }
  EXPECT_EQ(F.occupation(2, F.rank(std::vector<int>{1, 1})), (std::vector<int>{0, 2, 0, 0}));
  EXPECT_THROW(FockSpace(0, 2), DomainError);
  EXPECT_THROW(FockSpace(5000, 4), CapacityError);
}

TEST(Symmetrize, Examples) {
  // e0 (x) e1 -> (e0 (x) e1 + e1 (x) e0) / 2.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[1] = 1.0;
  const Eigen::VectorXcd s = symmetrize(v, 2, 2);
  EXPECT_NEAR(std::abs(s[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[2] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[0]) + std::abs(s[3]), 0.0, 1e-15);
  const Eigen::VectorXcd a = antisymmetrize(v, 2, 2);
  EXPECT_NEAR(std::abs(a[1] - 0.5) + std::abs(a[2] + 0.5), 0.0, 1e-15);

  SplitMix64 rng(1);
  const Eigen::VectorXcd psi = rand_vec(rng, 3);
  Eigen::VectorXcd pp(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pp[3 * i + j] = psi[i] * psi[j];
  EXPECT_LT((symmetrize(pp, 3, 2) - pp).norm(), 1e-15);

  const Eigen::VectorXcd t = rand_vec(rng, 64);
  const Eigen::VectorXcd st = symmetrize(t, 4, 3);
  EXPECT_LT((symmetrize(st, 4, 3) - st).norm(), 1e-13);
  const Eigen::VectorXcd at = antisymmetrize(t, 4, 3);
  EXPECT_LT((antisymmetrize(at, 4, 3) - at).norm(), 1e-13);
  EXPECT_LT(std::abs(st.dot(at)), 1e-13);
  EXPECT_THROW(symmetrize(Eigen::VectorXcd::Zero(1 << 14), 2, 14), CapacityError);
}

TEST(Ladder, VacuumAndOneParticle) {
  const FockSpace F(3, 4);
  const FockVector omega = FockVector::vacuum(F);
  EXPECT_EQ(annihilate(F, Eigen::VectorXcd::Ones(3), omega).norm(), 0.0);
  const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(3, 1);
  const FockVector one = create(F, e1, omega);
  EXPECT_NEAR(std::abs(one.sectors[1][1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR((annihilate(F, e1, one) - omega).norm(), 0.0, 1e-15);
  // a*(e1)^2 Omega = sqrt 2 |0,2,0>.
  const FockVector two = create(F, e1, one);
  EXPECT_NEAR(std::abs(two.sectors[2][static_cast<Eigen::Index>(F.rank(std::vector<int>{1, 1}))]), std::sqrt(2.0),
              1e-15);
  // Phi(f) Omega = f / sqrt 2 in the one-particle sector.
  SplitMix64 rng(3);
  const Eigen::VectorXcd f = rand_vec(rng, 3);
  EXPECT_LT((segal_field(F, f, omega).sectors[1] - f / std::sqrt(2.0)).norm(), 1e-15);
}

TEST(Ladder, ConjugateLinearAnnihilation) {
  const FockSpace F(2, 3);
  SplitMix64 rng(4);
  const Eigen::VectorXcd f = rand_vec(rng, 2);
  const FockVector v = rand_state(rng, F, 3);
  const cplx c(0.3, 0.8);
  EXPECT_LT((annihilate(F, c * f, v) - std::conj(c) * annihilate(F, f, v)).norm(), 1e-14);
  EXPECT_LT((create(F, c * f, v) - c * create(F, f, v)).norm(), 1e-14);
}

TEST(Ladder, AdjointnessAndCcr) {
  const FockSpace F(3, 5);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXcd f = rand_vec(rng, 3), g = rand_vec(rng, 3);
    const FockVector u = rand_state(rng, F, 4), v = rand_state(rng, F, 5);
    EXPECT_LT(std::abs(inner(create(F, f, u), v) - inner(u, annihilate(F, f, v))), 1e-12);
    const FockVector lhs = annihilate(F, f, create(F, g, u)) - create(F, g, annihilate(F, f, u));
    EXPECT_LT((lhs - inner(f, g) * u).norm(), 1e-12);
  }
}

TEST(Ladder, OverflowIsRecorded) {
  const FockSpace F(2, 1);
  const FockVector one = create(F, Eigen::VectorXcd::Unit(2, 0), FockVector::vacuum(F));
  const FockVector lost = create(F, Eigen::VectorXcd::Unit(2, 0), one);
  EXPECT_EQ(lost.norm(), 0.0);
  EXPECT_NEAR(lost.discarded_norm_sq, 2.0, 1e-15);
}

TEST(Segal, CommutatorIdentity) {
  const FockSpace F(3, 5);
  SplitMix64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXcd f = rand_vec(rng, 3), g = rand_vec(rng, 3);
    const FockVector v = rand_state(rng, F, 3);
    const FockVector lhs = segal_field(F, f, segal_field(F, g, v)) - segal_field(F, g, segal_field(F, f, v));
    EXPECT_LT((lhs - cplx(0.0, inner(f, g).imag()) * v).norm(), 1e-12);
    const FockVector real = segal_field(F, f, segal_field(F, 2.5 * f, v)) - segal_field(F, 2.5 * f, segal_field(F, f, v));
    EXPECT_LT(real.norm(), 1e-12);
  }
}

TEST(Segal, MatrixIsHermitianAndRealLinear) {
  const FockSpace F(2, 4);
  SplitMix64 rng(7);
  const Eigen::VectorXcd f = rand_vec(rng, 2), g = rand_vec(rng, 2);
  const Eigen::MatrixXcd M = segal_matrix(F, f);
  EXPECT_LT((M - M.adjoint()).norm(), 1e-14);
  EXPECT_LT((segal_matrix(F, f + 2.0 * g) - M - 2.0 * segal_matrix(F, g)).norm(), 1e-13);
  const FockVector v = rand_state(rng, F, 4);
  EXPECT_LT((to_flat(segal_field(F, f, v)) - M * to_flat(v)).norm(), 1e-14);
  const FockVector fm = field_map(F, cplx(0, 1) * f, v);
  EXPECT_LT((fm - cplx(0, 1) * field_map(F, f, v)).norm(), 1e-13);
}

// Brute-force dGamma spectrum: Kronecker sum on the full tensor power,
// compressed to the range of the symmetrizer.
std::vector<double> kronecker_oracle(const Eigen::MatrixXcd& A, int n) {
  const int d = static_cast<int>(A.rows());
  int D = 1;
  for (int k = 0; k < n; ++k) D *= d;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(D, D);
  for (int slot = 0; slot < n; ++slot) {
    int stride = 1;
    for (int k = slot + 1; k < n; ++k) stride *= d;
    for (int col = 0; col < D; ++col) {
      const int ic = (col / stride) % d;
      for (int i = 0; i < d; ++i) M(col + (i - ic) * stride, col) += A(i, ic);
    }
  }
  Eigen::MatrixXcd S(D, D);
  for (int c = 0; c < D; ++c) S.col(c) = symmetrize(Eigen::VectorXcd::Unit(D, c), d, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ps(S);
  std::vector<int> keep;
  for (int k = 0; k < D; ++k)
    if (ps.eigenvalues()[k] > 0.5) keep.push_back(k);
  Eigen::MatrixXcd Q(D, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) Q.col(static_cast<Eigen::Index>(k)) = ps.eigenvectors().col(keep[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q.adjoint() * M * Q);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

TEST(DGamma, Examples) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
  A(0, 0) = 1;
  A(1, 1) = 2;
  EXPECT_EQ(dGamma_spectrum(A, 2), (std::vector<double>{2, 3, 4}));
  A(0, 0) = 0;
  A(1, 1) = 5;
  EXPECT_EQ(dGamma_spectrum(A, 3), (std::vector<double>{0, 5, 10, 15}));
  const FockSpace F(3, 4);
  const SecondQuantizedOperator N = dGamma(F, Eigen::MatrixXcd::Identity(3, 3));
  for (int n = 0; n <= 4; ++n) {
    const auto& b = N.sector(n);
    EXPECT_LT((b - n * Eigen::MatrixXcd::Identity(b.rows(), b.cols())).norm(), 1e-14);
  }
}

TEST(DGamma, MatchesKroneckerOracle) {
  SplitMix64 rng(8);
  for (int d = 1; d <= 4; ++d) {
    const Eigen::MatrixXcd A = rand_hermitian(rng, d);
    const FockSpace F(d, 3);
    const SecondQuantizedOperator dG = dGamma(F, A);
    for (int n = 1; n <= 3; ++n) {
      const auto oracle = kronecker_oracle(A, n);
      const auto formula = dGamma_spectrum(A, n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dG.sector(n));
      ASSERT_EQ(oracle.size(), formula.size());
      ASSERT_EQ(static_cast<Eigen::Index>(oracle.size()), es.eigenvalues().size());
      for (std::size_t k = 0; k < oracle.size(); ++k) {
        EXPECT_NEAR(formula[k], oracle[k], 1e-10);
        EXPECT_NEAR(es.eigenvalues()[static_cast<Eigen::Index>(k)], oracle[k], 1e-10);
      }
    }
  }
  EXPECT_THROW(dGamma(FockSpace(2, 2), Eigen::MatrixXcd::Random(2, 2)), DomainError);
}

TEST(Gamma, IdentityUnitarityCovariance) {
  const FockSpace F(3, 4);
  const SecondQuantizedOperator I = Gamma(F, Eigen::MatrixXcd::Identity(3, 3));
  EXPECT_LT((I.dense() - Eigen::MatrixXcd::Identity(35, 35)).norm(), 1e-14);
  SplitMix64 rng(9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rand_hermitian(rng, 3));
  Eigen::VectorXcd ph(3);
  for (int i = 0; i < 3; ++i) ph[i] = std::exp(cplx(0, es.eigenvalues()[i]));
  const Eigen::MatrixXcd U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  const SecondQuantizedOperator G = Gamma(F, U), Gi = Gamma(F, U.adjoint());
  for (int n = 0; n <= 4; ++n) {
    const auto& b = G.sector(n);
    EXPECT_LT((b.adjoint() * b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).norm(), 1e-12);
  }
  const FockVector omega = FockVector::vacuum(F);
  EXPECT_LT((G.apply(omega) - omega).norm(), 1e-15);
  const Eigen::VectorXcd f = rand_vec(rng, 3);
  const FockVector v = rand_state(rng, F, 3);
  EXPECT_LT((G.apply(segal_field(F, f, Gi.apply(v))) - segal_field(F, U * f, v)).norm(), 1e-12);
  EXPECT_THROW(Gamma(F, 2.0 * Eigen::MatrixXcd::Identity(3, 3)), DomainError);
}

TEST(Smeared, DisjointSupports) {
  const Grid g(4);
  std::vector<double> zero(g.sites(), 0.0), phi(g.sites(), 0.0), chi(g.sites(), 0.0);
  EXPECT_EQ(smeared_field_vector(g, 3, zero, 0, 0).norm(), 0.0);
  phi[3] = 1.0;
  chi[40] = 2.0;
  const Eigen::VectorXcd a = smeared_field_vector(g, 3, phi, 0, 1), b = smeared_field_vector(g, 3, chi, 0, 1);
  EXPECT_EQ(a.size(), static_cast<Eigen::Index>(g.sites() * 4 * 3));
  EXPECT_EQ(std::abs(a.dot(b)), 0.0);
  EXPECT_NEAR(std::abs(a[(3 * 4 + 0) * 3 + 1]), std::pow(g.spacing(), 1.5), 1e-15);
  EXPECT_THROW(smeared_field_vector(g, 3, phi, 4, 0), DomainError);
}

}  // namespace
}  // namespace ymc
