// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ymc/algebra.hpp"
#include "ymc/lattice.hpp"

namespace ymc {

/// (1/16) int sum_{a,i} [eps_i^{jk} (d_j A^a_k - d_k A^a_j + g eps^abc A^b_j A^c_k)]^2.
double h2_density(const StructureConstants& sc, const LatticeField& A);

/// Outcome of a reciprocal integral I = int ds / h(s).
struct ReciprocalIntegral {
  enum class Flag { ok, pv, singular, unconverged };

  double value = 0.0;
  Flag flag = Flag::ok;
  int nodes = 0;
  /// max over evaluated nodes of 1 / |h|.
  double max_inverse = 0.0;
};

const char* to_string(ReciprocalIntegral::Flag f) noexcept;

struct QuadratureOptions {
  int initial_nodes = 8;
  int max_nodes = 256;
  double rel_tol = 1e-8;
  /// Fold the integral about 0: int_0^R [1/h(s) + 1/h(-s)] ds.
  bool principal_value = false;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// int_{-R}^{R} ds / h(s) with node doubling until the relative change is
/// below rel_tol. A sign change of h between neighbouring nodes excludes a
/// window of total width 2 * node spacing around the interpolated zero
/// (flag singular). Throws DomainError ("degenerate family") when h vanishes
/// on every node.
ReciprocalIntegral integrate_reciprocal(const std::function<double(double)>& h, double R,
                                        const QuadratureOptions& opts = {});

enum class GapPath {
  /// A(s) = A_hat + s t, t moving A(y0) along the characteristic direction tau.
  component,
  /// A(alpha) = alpha A_hat.
  amplitude,
};

struct SitePair {
  std::size_t x0 = 0;
  std::size_t y0 = 0;
};

struct GapScanConfig {
  Grid grid{4};
  int K = 3;
  std::vector<double> g_list{0.05, 0.1, 0.2, 0.4};
  double R_amp = 0.5;
  std::uint64_t profile_seed = 1;
  std::vector<SitePair> sites;
  int k_max = 1;
  int born_terms = 24;
  GapPath path = GapPath::component;
  QuadratureOptions quadrature{};

  /// Throws DomainError naming the violated field.
  void validate() const;
};

/// Default site pairs: y0 at the origin, x0 offset by (1,1,1), (1,1,-1),
/// (1,-1,1), (-1,1,1) (all offset components odd).
std::vector<SitePair> default_site_pairs(const Grid& grid);

struct GapRow {
  double g = 0.0;
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  int i = 0;
  int a = 0;
  int k = 0;
  double I = 0.0;
  double lambda = 0.0;
  ReciprocalIntegral::Flag flag = ReciprocalIntegral::Flag::ok;
};

struct GapScanResult {
  std::vector<GapRow> rows;
  std::vector<double> g_list;
  /// eta[j] = min positive lambda at g_list[j] (0 if none).
  std::vector<double> eta;
  /// C from eta = 6 K g^2 / C^2.
  std::vector<double> fitted_C;
  double fitted_slope = 0.0;
  /// max over nodes of 1 / (|h| spacing^2).
  double bound_echo = 0.0;
  std::string path;
};

/// The fixed profile: seeded transverse field with unit l2 norm.
LatticeField gap_profile(const GapScanConfig& cfg);

/// I = int ds / h(s) for one (g, site pair, i, a). The integrand for all
/// three i comes from the same Green's-function columns; `i` selects one.
ReciprocalIntegral denominator_integral(const GapScanConfig& cfg, double g, const SitePair& site, int i,
                                        int a, const LatticeField& profile);

/// Full scan; rows ordered by g, site pair, a, i, k.
GapScanResult gap_scan(const GapScanConfig& cfg);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ymc
