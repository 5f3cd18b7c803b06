// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ymc/algebra.hpp"
#include "ymc/lattice.hpp"

namespace ymc {

/// B^a_i = 1/4 eps_ijk (d_j A^a_k - d_k A^a_j + g eps^abc A^b_j A^c_k),
/// spectral derivatives, pointwise products on the grid.
LatticeField chromomagnetic(const StructureConstants& sc, const LatticeField& A);

/// rho^a = g eps^abc E^b_i A^c_i, pointwise.
ColorScalarField charge_density(const StructureConstants& sc, const LatticeField& A,
                                 const LatticeField& E);

/// A_mu for mu = 0..3 on one time slice. The temporal component A0 and the
/// time derivative of the spatial part are optional caller inputs.
struct SpacetimePotential {
  LatticeField A;
  std::optional<ColorScalarField> A0;
  std::optional<LatticeField> dA_dt;
};

/// The six components F^k_{mu nu}, mu < nu, stored at
/// data[(site * K + k) * 6 + pair] with pair order 01 02 03 12 13 23.
class CurvatureField {
 public:
  CurvatureField(const Grid& grid, int K, bool has_temporal);

  const Grid& grid() const noexcept { return grid_; }
  int K() const noexcept { return K_; }
  bool has_temporal() const noexcept { return has_temporal_; }
  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  static int pair_index(int mu, int nu) noexcept;

  /// F^k_{mu nu} with F_{nu mu} = -F_{mu nu} and F_{mu mu} = 0. Throws
  /// DomainError for temporal components when they were not computed.
  double value(std::size_t site, int k, int mu, int nu) const;
  void set(std::size_t site, int k, int mu, int nu, double v);

 private:
  Grid grid_;
  int K_;
  bool has_temporal_;
  std::vector<double> data_;
};

/// F^k_{mu nu} = 1/2 (d_nu A^k_mu - d_mu A^k_nu - g eps^kab A^a_mu A^b_nu).
/// Temporal components are computed iff both A0 and dA_dt are present;
/// passing A0 without dA_dt (or the reverse) is a DomainError.
CurvatureField curvature(const StructureConstants& sc, const SpacetimePotential& A4);

/// Pointwise 1/2 sum_{a,i} (E^2 + B^2), one value per site.
std::vector<double> energy_density(const StructureConstants& sc, const LatticeField& A,
                                   const LatticeField& E);

}  // namespace ymc
