// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/fields.hpp"

#include "ymc/error.hpp"

namespace ymc {
namespace {

void require_color_match(const StructureConstants& sc, int K, const char* op) {
  if (sc.K() != K) {
    throw DomainError("fields", std::string(op) + ".K", "field color count differs from algebra");
  }
}

}  // namespace

LatticeField chromomagnetic(const StructureConstants& sc, const LatticeField& A) {
  require_color_match(sc, A.K(), "chromomagnetic");
  LatticeField B = curl(A);
  B *= 0.5;
  B.set_kind(FieldKind::auxiliary);
  const int K = A.K();
  const double g4 = 0.25;
  for (std::size_t s = 0; s < A.grid().sites(); ++s)
    for (int a = 0; a < K; ++a)
      for (int i = 0; i < 3; ++i) {
        double q = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const int e = levi_civita(i, j, k);
            if (e == 0) continue;
            for (int b = 0; b < K; ++b)
              for (int c = 0; c < K; ++c) q += e * sc(a, b, c) * A.at(s, b, j) * A.at(s, c, k);
          }
        B.at(s, a, i) += g4 * q;
      }
  return B;
}

ColorScalarField charge_density(const StructureConstants& sc, const LatticeField& A,
                                 const LatticeField& E) {
  if (!(A.grid() == E.grid()) || A.K() != E.K()) {
    throw DomainError("fields", "charge_density.shape", "A and E shapes differ");
  }
  require_color_match(sc, A.K(), "charge_density");
  const int K = A.K();
  ColorScalarField rho(A.grid(), K);
  for (std::size_t s = 0; s < A.grid().sites(); ++s)
    for (int a = 0; a < K; ++a) {
      double r = 0.0;
      for (int b = 0; b < K; ++b)
        for (int c = 0; c < K; ++c) {
          const double C = sc(a, b, c);
          if (C == 0.0) continue;
          for (int i = 0; i < 3; ++i) r += C * E.at(s, b, i) * A.at(s, c, i);
        }
      rho.at(s, a) = r;
    }
  return rho;
}

CurvatureField::CurvatureField(const Grid& grid, int K, bool has_temporal)
    : grid_(grid), K_(K), has_temporal_(has_temporal), data_(grid.sites() * K * 6, 0.0) {}

int CurvatureField::pair_index(int mu, int nu) noexcept {
  // mu < nu assumed.
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return table[mu][nu];
}

double CurvatureField::value(std::size_t site, int k, int mu, int nu) const {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) {
    throw DomainError("fields", "curvature.index", "spacetime index outside 0..3");
  }
  if (mu == nu) return 0.0;
  if ((mu == 0 || nu == 0) && !has_temporal_) {
    throw DomainError("fields", "curvature.temporal", "temporal components were not supplied");
  }
  const double sign = mu < nu ? 1.0 : -1.0;
  const int p = mu < nu ? pair_index(mu, nu) : pair_index(nu, mu);
  return sign * data_[(site * K_ + k) * 6 + p];
}

void CurvatureField::set(std::size_t site, int k, int mu, int nu, double v) {
  if (mu < nu) {
    data_[(site * K_ + k) * 6 + pair_index(mu, nu)] = v;
  } else if (nu < mu) {
    data_[(site * K_ + k) * 6 + pair_index(nu, mu)] = -v;
  }
}

CurvatureField curvature(const StructureConstants& sc, const SpacetimePotential& A4) {
  const LatticeField& A = A4.A;
  require_color_match(sc, A.K(), "curvature");
  if (A4.A0.has_value() != A4.dA_dt.has_value()) {
    throw DomainError("fields", "curvature.time_derivative",
                      "A0 and the time derivative of A must be supplied together");
  }
  const bool temporal = A4.A0.has_value();
  const Grid& grid = A.grid();
  const int K = A.K();
  CurvatureField F(grid, K, temporal);

  // dA[j] = d_j A (all colors, directions).
  std::array<LatticeField, 3> dA{spectral_derivative(A, 0), spectral_derivative(A, 1),
                                 spectral_derivative(A, 2)};
  for (std::size_t s = 0; s < grid.sites(); ++s)
    for (int k = 0; k < K; ++k)
      for (int m = 1; m <= 3; ++m)
        for (int n = m + 1; n <= 3; ++n) {
          const int i = m - 1, j = n - 1;
          double q = 0.0;
          for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) q += sc(k, a, b) * A.at(s, a, i) * A.at(s, b, j);
          F.set(s, k, m, n, 0.5 * (dA[j].at(s, k, i) - dA[i].at(s, k, j) - q));
        }

  if (temporal) {
    const ColorScalarField& A0 = *A4.A0;
    const LatticeField& dt = *A4.dA_dt;
    if (!(A0.grid() == grid) || A0.K() != K || !(dt.grid() == grid) || dt.K() != K) {
      throw DomainError("fields", "curvature.shape", "temporal inputs differ in shape from A");
    }
    std::array<ColorScalarField, 3> dA0{spectral_derivative(A0, 0), spectral_derivative(A0, 1),
                                        spectral_derivative(A0, 2)};
    for (std::size_t s = 0; s < grid.sites(); ++s)
      for (int k = 0; k < K; ++k)
        for (int n = 1; n <= 3; ++n) {
          const int j = n - 1;
          double q = 0.0;
          for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) q += sc(k, a, b) * A0.at(s, a) * A.at(s, b, j);
          F.set(s, k, 0, n, 0.5 * (dA0[j].at(s, k) - dt.at(s, k, j) - q));
        }
  }
  return F;
}

std::vector<double> energy_density(const StructureConstants& sc, const LatticeField& A,
                                   const LatticeField& E) {
  const LatticeField B = chromomagnetic(sc, A);
  std::vector<double> e(A.grid().sites(), 0.0);
  for (std::size_t s = 0; s < A.grid().sites(); ++s)
    for (int a = 0; a < A.K(); ++a)
      for (int i = 0; i < 3; ++i) e[s] += 0.5 * (E.at(s, a, i) * E.at(s, a, i) + B.at(s, a, i) * B.at(s, a, i));
  return e;
}

}  // namespace ymc
