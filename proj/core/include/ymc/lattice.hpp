// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ymc {

/// Periodic N^3 grid on a cube of edge L_box.
///
/// Sites are numbered x3-fastest: site = (x1 * N + x2) * N + x3. The integer
/// wavenumber of FFT bin j is kappa(j) = j for j <= N/2 and j - N otherwise;
/// the physical wavenumber is p = (2 pi / L_box) * kappa.
class Grid {
 public:
  /// Throws DomainError unless N >= 4, N even and L_box finite and > 0.
  explicit Grid(int N = 4, double L_box = 2.0 * std::numbers::pi);

  int N() const noexcept { return N_; }
  double L_box() const noexcept { return L_; }
  double spacing() const noexcept { return L_ / N_; }
  /// Quadrature weight spacing^3.
  double cell_volume() const noexcept { return spacing() * spacing() * spacing(); }
  std::size_t sites() const noexcept { return static_cast<std::size_t>(N_) * N_ * N_; }
  double fundamental() const noexcept { return 2.0 * std::numbers::pi / L_; }

  std::size_t site(int x1, int x2, int x3) const noexcept;
  std::array<int, 3> coords(std::size_t site) const noexcept;
  /// Site shifted by an integer offset, wrapped periodically.
  std::size_t shifted(std::size_t site, const std::array<int, 3>& offset) const noexcept;
  /// Physical coordinate of a site along direction i (x_i = spacing * index).
  double position(std::size_t site, int i) const noexcept;

  int kappa(int j) const noexcept { return j <= N_ / 2 ? j : j - N_; }
  bool is_nyquist(int j) const noexcept { return j == N_ / 2; }

  bool operator==(const Grid& o) const noexcept { return N_ == o.N_ && L_ == o.L_; }

 private:
  int N_;
  double L_;
};

enum class FieldKind : std::uint8_t { potential = 0, momentum = 1, auxiliary = 2 };

/// Real field with one value per (site, color a, direction i), stored at
/// data[(site * K + a) * 3 + i]. Indices are 0-based.
class LatticeField {
 public:
  LatticeField(const Grid& grid, int K = 3, FieldKind kind = FieldKind::potential);

  const Grid& grid() const noexcept { return grid_; }
  int K() const noexcept { return K_; }
  FieldKind kind() const noexcept { return kind_; }
  void set_kind(FieldKind k) noexcept { kind_ = k; }

  std::size_t size() const noexcept { return data_.size(); }
  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  double& at(std::size_t site, int a, int i) noexcept { return data_[index(site, a, i)]; }
  double at(std::size_t site, int a, int i) const noexcept { return data_[index(site, a, i)]; }
  std::size_t index(std::size_t site, int a, int i) const noexcept {
    return (site * static_cast<std::size_t>(K_) + static_cast<std::size_t>(a)) * 3 +
           static_cast<std::size_t>(i);
  }

  LatticeField& operator+=(const LatticeField& o);
  LatticeField& operator-=(const LatticeField& o);
  LatticeField& operator*=(double s) noexcept;
  /// this += s * o
  LatticeField& axpy(double s, const LatticeField& o);

 private:
  Grid grid_;
  int K_;
  FieldKind kind_;
  std::vector<double> data_;
};

/// Real field with one value per (site, color a), stored at data[site * K + a].
class ColorScalarField {
 public:
  ColorScalarField(const Grid& grid, int K = 3);

  const Grid& grid() const noexcept { return grid_; }
  int K() const noexcept { return K_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  double& at(std::size_t site, int a) noexcept { return data_[site * K_ + a]; }
  double at(std::size_t site, int a) const noexcept { return data_[site * K_ + a]; }

  ColorScalarField& operator+=(const ColorScalarField& o);
  ColorScalarField& operator-=(const ColorScalarField& o);
  ColorScalarField& operator*=(double s) noexcept;
  ColorScalarField& axpy(double s, const ColorScalarField& o);

 private:
  Grid grid_;
  int K_;
  std::vector<double> data_;
};

LatticeField operator+(LatticeField a, const LatticeField& b);
LatticeField operator-(LatticeField a, const LatticeField& b);
LatticeField operator*(double s, LatticeField a);
ColorScalarField operator+(ColorScalarField a, const ColorScalarField& b);
ColorScalarField operator-(ColorScalarField a, const ColorScalarField& b);
ColorScalarField operator*(double s, ColorScalarField a);

/// Throws DomainError naming `what` if any entry is NaN or infinite.
void require_finite(const LatticeField& f, const char* what);
void require_finite(const ColorScalarField& f, const char* what);

/// Fourier multiplier i p_j along direction j in {0,1,2}. The Nyquist bin
/// along j maps to zero so the result of a real field stays real.
ColorScalarField spectral_derivative(const ColorScalarField& f, int j);
LatticeField spectral_derivative(const LatticeField& f, int j);

/// Multiplier -|p|^2 (Nyquist bins included).
ColorScalarField laplacian(const ColorScalarField& f);
LatticeField laplacian(const LatticeField& f);

/// Solves Delta u = -f with the zero-mode of u set to zero, per color.
ColorScalarField free_green_apply(const ColorScalarField& f);

/// sum_j d_j v_j per color.
ColorScalarField divergence(const LatticeField& v);

/// (curl v)_i = eps_ijk d_j v_k per color.
LatticeField curl(const LatticeField& v);

/// Multiplier delta_ij - p_i p_j / |p|^2 with Nyquist components of p set to
/// zero; modes with vanishing (reduced) p pass through unchanged.
LatticeField transverse_project(const LatticeField& v);

/// max over sites and colors of |div A|.
double coulomb_residual(const LatticeField& A);

/// sum u*v*spacing^3. Throws DomainError on shape mismatch.
double l2_inner(const LatticeField& u, const LatticeField& v);
double l2_inner(const ColorScalarField& u, const ColorScalarField& v);
double l2_norm(const LatticeField& u);
double l2_norm(const ColorScalarField& u);

/// Per-color mean over sites.
std::vector<double> color_mean(const ColorScalarField& f);

}  // namespace ymc
