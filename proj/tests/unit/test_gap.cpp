// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ymc/error.hpp"
#include "ymc/gap.hpp"
#include "ymc/random.hpp"

namespace ymc {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(H2Density, ZeroAndSingleMode) {
  const Grid g(8);
  EXPECT_EQ(h2_density(StructureConstants(0.3), LatticeField(g, 3)), 0.0);
  // A^0_1 = alpha sin x_0: the bracket is 2 alpha cos x_0 along i = 2, so the
  // density is (1/16) * 4 alpha^2 * L^3 / 2 = alpha^2 L^3 / 8.
  const double alpha = 0.7;
  LatticeField A(g, 3);
  for (std::size_t s = 0; s < g.sites(); ++s) A.at(s, 0, 1) = alpha * std::sin(g.position(s, 0));
  EXPECT_NEAR(h2_density(StructureConstants(0.0), A), alpha * alpha * std::pow(g.L_box(), 3) / 8, 1e-12);
}

TEST(H2Density, NonNegative) {
  RandomFieldSpec spec;
  spec.seed = 2;
  const LatticeField A = generate_field(Grid(4), 3, spec);
  EXPECT_GT(h2_density(StructureConstants(0.5), A), 0.0);
}

TEST(GaussLegendre, ExactOnPolynomials) {
  for (int n : {1, 2, 5, 8, 16}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    ASSERT_EQ(x.size(), static_cast<std::size_t>(n));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double q = 0.0;
      for (int k = 0; k < n; ++k) q += w[static_cast<std::size_t>(k)] * std::pow(x[static_cast<std::size_t>(k)], p);
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(q, exact, 1e-13) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Reciprocal, SmoothIntegrand) {
  // int_{-1}^{1} ds / (1 + s^2) = pi / 2.
  const ReciprocalIntegral r = integrate_reciprocal([](double s) { return 1.0 + s * s; }, 1.0);
  EXPECT_EQ(r.flag, ReciprocalIntegral::Flag::ok);
  EXPECT_NEAR(r.value, kPi / 2, 1e-10);
  EXPECT_NEAR(r.max_inverse, 1.0, 0.05);
  // Doubling the node budget changes the value by far less than 1e-6.
  QuadratureOptions hi;
  hi.initial_nodes = 64;
  const ReciprocalIntegral r2 = integrate_reciprocal([](double s) { return 1.0 + s * s; }, 1.0, hi);
  EXPECT_LT(std::abs(r2.value - r.value) / std::abs(r.value), 1e-6);
}

TEST(Reciprocal, OddIntegrandIsFlagged) {
  const auto h = [](double s) { return s * (1.0 + s * s); };
  const ReciprocalIntegral sing = integrate_reciprocal(h, 0.5);
  EXPECT_EQ(sing.flag, ReciprocalIntegral::Flag::singular);
  QuadratureOptions pv;
  pv.principal_value = true;
  const ReciprocalIntegral r = integrate_reciprocal(h, 0.5, pv);
  EXPECT_EQ(r.flag, ReciprocalIntegral::Flag::pv);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_STREQ(to_string(r.flag), "pv");
}

TEST(Reciprocal, DegenerateFamily) {
  EXPECT_THROW(integrate_reciprocal([](double) { return 0.0; }, 1.0), DomainError);
}

TEST(LogLogSlope, PowerLaw) {
  const std::vector<double> x{0.05, 0.1, 0.2, 0.4};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v);
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
}

TEST(GapConfig, Validation) {
  GapScanConfig cfg;
  cfg.sites = default_site_pairs(cfg.grid);
  EXPECT_NO_THROW(cfg.validate());
  for (const auto& p : cfg.sites) {
    const auto cx = cfg.grid.coords(p.x0), cy = cfg.grid.coords(p.y0);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(((cx[j] - cy[j]) % 4 + 4) % 2, 1);
  }
  GapScanConfig bad = cfg;
  bad.g_list = {0.1, 1.0};
  EXPECT_THROW(bad.validate(), DomainError);
  bad = cfg;
  bad.R_amp = 0.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = cfg;
  bad.k_max = 0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = cfg;
  bad.sites = {{cfg.grid.site(2, 1, 1), cfg.grid.site(0, 0, 0)}};
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(GapProfile, UnitNormTransverse) {
  const GapScanConfig cfg;
  const LatticeField A = gap_profile(cfg);
  EXPECT_NEAR(l2_norm(A), 1.0, 1e-14);
  EXPECT_LT(coulomb_residual(A), 1e-10);
}

TEST(GapScan, EigenvalueStructure) {
  GapScanConfig cfg;
  cfg.g_list = {0.1};
  cfg.sites = {default_site_pairs(cfg.grid).front()};
  cfg.k_max = 2;
  const GapScanResult r = gap_scan(cfg);
  ASSERT_EQ(r.rows.size(), 3u * 3u * 2u);
  for (std::size_t j = 0; j + 1 < r.rows.size(); j += 2) {
    const GapRow& k1 = r.rows[j];
    const GapRow& k2 = r.rows[j + 1];
    ASSERT_EQ(k1.k, 1);
    ASSERT_EQ(k2.k, 2);
    EXPECT_EQ(k2.lambda, 4.0 * k1.lambda);
    EXPECT_NEAR(k1.lambda, 2 * kPi * kPi * 0.01 / (k1.I * k1.I), 1e-15 * k1.lambda);
    EXPECT_GE(k1.lambda, 0.0);
  }
  ASSERT_EQ(r.eta.size(), 1u);
  EXPECT_GT(r.eta[0], 0.0);
  EXPECT_NEAR(r.fitted_C[0], std::sqrt(6.0 * 3 * 0.01 / r.eta[0]), 1e-9 * r.fitted_C[0]);
  EXPECT_TRUE(std::isfinite(r.bound_echo));
  EXPECT_EQ(r.path, "component");
}

TEST(GapScan, IntegralIsSmoothInCoupling) {
  // I(g) tends to a g-independent value, so eta / g^2 changes slowly.
  GapScanConfig cfg;
  cfg.g_list = {0.05, 0.1};
  cfg.sites = {default_site_pairs(cfg.grid).front()};
  const GapScanResult r = gap_scan(cfg);
  ASSERT_EQ(r.eta.size(), 2u);
  EXPECT_NEAR((r.eta[1] / 0.01) / (r.eta[0] / 0.0025), 1.0, 0.05);
}

}  // namespace
}  // namespace ymc
