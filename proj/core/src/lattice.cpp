// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "ymc/error.hpp"

namespace ymc {

using detail::cvec;

Grid::Grid(int N, double L_box) : N_(N), L_(L_box) {
  if (N < 4 || N % 2 != 0) {
    throw DomainError("lattice", "grid.N", "N must be even and >= 4, got " + std::to_string(N));
  }
  if (!std::isfinite(L_box) || L_box <= 0.0) {
    throw DomainError("lattice", "grid.L_box", "L_box must be finite and > 0");
  }
}

std::size_t Grid::site(int x1, int x2, int x3) const noexcept {
  auto w = [this](int x) { return static_cast<std::size_t>(((x % N_) + N_) % N_); };
  const auto n = static_cast<std::size_t>(N_);
  return (w(x1) * n + w(x2)) * n + w(x3);
}

std::array<int, 3> Grid::coords(std::size_t s) const noexcept {
  const auto n = static_cast<std::size_t>(N_);
  return {static_cast<int>(s / (n * n)), static_cast<int>((s / n) % n), static_cast<int>(s % n)};
}

std::size_t Grid::shifted(std::size_t s, const std::array<int, 3>& off) const noexcept {
  auto c = coords(s);
  return site(c[0] + off[0], c[1] + off[1], c[2] + off[2]);
}

double Grid::position(std::size_t s, int i) const noexcept { return spacing() * coords(s)[i]; }

// ---------------------------------------------------------------------------

LatticeField::LatticeField(const Grid& grid, int K, FieldKind kind)
    : grid_(grid), K_(K), kind_(kind), data_(grid.sites() * static_cast<std::size_t>(K) * 3, 0.0) {
  if (K < 1) throw DomainError("lattice", "field.K", "K must be >= 1");
}

namespace {

template <class F>
void require_same_shape(const F& a, const F& b, const char* op) {
  if (!(a.grid() == b.grid()) || a.K() != b.K()) {
    throw DomainError("lattice", std::string(op) + ".shape", "grid or color count mismatch");
  }
}

}  // namespace

LatticeField& LatticeField::operator+=(const LatticeField& o) { return axpy(1.0, o); }
LatticeField& LatticeField::operator-=(const LatticeField& o) { return axpy(-1.0, o); }
LatticeField& LatticeField::operator*=(double s) noexcept {
  for (auto& x : data_) x *= s;
  return *this;
}
LatticeField& LatticeField::axpy(double s, const LatticeField& o) {
  require_same_shape(*this, o, "axpy");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

ColorScalarField::ColorScalarField(const Grid& grid, int K)
    : grid_(grid), K_(K), data_(grid.sites() * static_cast<std::size_t>(K), 0.0) {
  if (K < 1) throw DomainError("lattice", "field.K", "K must be >= 1");
}

ColorScalarField& ColorScalarField::operator+=(const ColorScalarField& o) { return axpy(1.0, o); }
ColorScalarField& ColorScalarField::operator-=(const ColorScalarField& o) { return axpy(-1.0, o); }
ColorScalarField& ColorScalarField::operator*=(double s) noexcept {
  for (auto& x : data_) x *= s;
  return *this;
}
ColorScalarField& ColorScalarField::axpy(double s, const ColorScalarField& o) {
  require_same_shape(*this, o, "axpy");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

LatticeField operator+(LatticeField a, const LatticeField& b) { return a += b; }
LatticeField operator-(LatticeField a, const LatticeField& b) { return a -= b; }
LatticeField operator*(double s, LatticeField a) { return a *= s; }
ColorScalarField operator+(ColorScalarField a, const ColorScalarField& b) { return a += b; }
ColorScalarField operator-(ColorScalarField a, const ColorScalarField& b) { return a -= b; }
ColorScalarField operator*(double s, ColorScalarField a) { return a *= s; }

void require_finite(const LatticeField& f, const char* what) {
  for (double x : f.data()) {
    if (!std::isfinite(x)) throw DomainError("lattice", std::string(what) + ".finite", "non-finite entry");
  }
}

void require_finite(const ColorScalarField& f, const char* what) {
  for (double x : f.data()) {
    if (!std::isfinite(x)) throw DomainError("lattice", std::string(what) + ".finite", "non-finite entry");
  }
}

// ---------------------------------------------------------------------------

namespace {

// Applies a complex Fourier multiplier m(k1,k2,k3) (bin indices) to one
// strided real channel in place.
template <class M>
void apply_multiplier(const Grid& g, double* channel, std::size_t stride, M&& m) {
  const int n = g.N();
  cvec spec = detail::forward_real(n, channel, stride);
  std::size_t k = 0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3, ++k) spec[k] *= m(j1, j2, j3);
  detail::inverse_to_real(n, spec, channel, stride);
}

// Reduced wavenumber used by first derivatives: zero at the Nyquist bin.
double reduced_p(const Grid& g, int j) { return g.is_nyquist(j) ? 0.0 : g.fundamental() * g.kappa(j); }
double full_p(const Grid& g, int j) { return g.fundamental() * g.kappa(j); }

std::complex<double> derivative_symbol(const Grid& g, int dir, int j1, int j2, int j3) {
  const int j = dir == 0 ? j1 : (dir == 1 ? j2 : j3);
  return {0.0, reduced_p(g, j)};
}

}  // namespace

ColorScalarField spectral_derivative(const ColorScalarField& f, int j) {
  if (j < 0 || j > 2) throw DomainError("lattice", "derivative.direction", "direction must be 0..2");
  require_finite(f, "derivative");
  ColorScalarField out = f;
  const Grid& g = f.grid();
  for (int a = 0; a < f.K(); ++a) {
    apply_multiplier(g, out.data().data() + a, static_cast<std::size_t>(f.K()),
                     [&](int j1, int j2, int j3) { return derivative_symbol(g, j, j1, j2, j3); });
  }
  return out;
}

LatticeField spectral_derivative(const LatticeField& f, int j) {
  if (j < 0 || j > 2) throw DomainError("lattice", "derivative.direction", "direction must be 0..2");
  require_finite(f, "derivative");
  LatticeField out = f;
  const Grid& g = f.grid();
  const auto stride = static_cast<std::size_t>(f.K()) * 3;
  for (std::size_t c = 0; c < stride; ++c) {
    apply_multiplier(g, out.data().data() + c, stride,
                     [&](int j1, int j2, int j3) { return derivative_symbol(g, j, j1, j2, j3); });
  }
  return out;
}

namespace {

std::complex<double> laplacian_symbol(const Grid& g, int j1, int j2, int j3) {
  const double p1 = full_p(g, j1), p2 = full_p(g, j2), p3 = full_p(g, j3);
  return {-(p1 * p1 + p2 * p2 + p3 * p3), 0.0};
}

}  // namespace

ColorScalarField laplacian(const ColorScalarField& f) {
  ColorScalarField out = f;
  const Grid& g = f.grid();
  for (int a = 0; a < f.K(); ++a) {
    apply_multiplier(g, out.data().data() + a, static_cast<std::size_t>(f.K()),
                     [&](int j1, int j2, int j3) { return laplacian_symbol(g, j1, j2, j3); });
  }
  return out;
}

LatticeField laplacian(const LatticeField& f) {
  LatticeField out = f;
  const Grid& g = f.grid();
  const auto stride = static_cast<std::size_t>(f.K()) * 3;
  for (std::size_t c = 0; c < stride; ++c) {
    apply_multiplier(g, out.data().data() + c, stride,
                     [&](int j1, int j2, int j3) { return laplacian_symbol(g, j1, j2, j3); });
  }
  return out;
}

ColorScalarField free_green_apply(const ColorScalarField& f) {
  require_finite(f, "free_green");
  ColorScalarField out = f;
  const Grid& g = f.grid();
  for (int a = 0; a < f.K(); ++a) {
    apply_multiplier(g, out.data().data() + a, static_cast<std::size_t>(f.K()),
                     [&](int j1, int j2, int j3) -> std::complex<double> {
                       const double p2 = -laplacian_symbol(g, j1, j2, j3).real();
                       return p2 == 0.0 ? 0.0 : 1.0 / p2;
                     });
  }
  return out;
}

ColorScalarField divergence(const LatticeField& v) {
  require_finite(v, "divergence");
  const Grid& g = v.grid();
  const int n = g.N();
  const int K = v.K();
  const auto stride = static_cast<std::size_t>(K) * 3;
  ColorScalarField out(g, K);
  for (int a = 0; a < K; ++a) {
    cvec acc(g.sites(), 0.0);
    for (int i = 0; i < 3; ++i) {
      cvec spec = detail::forward_real(n, v.data().data() + a * 3 + i, stride);
      std::size_t k = 0;
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2)
          for (int j3 = 0; j3 < n; ++j3, ++k) acc[k] += spec[k] * derivative_symbol(g, i, j1, j2, j3);
    }
    detail::inverse_to_real(n, acc, out.data().data() + a, static_cast<std::size_t>(K));
  }
  return out;
}

LatticeField curl(const LatticeField& v) {
  require_finite(v, "curl");
  const Grid& g = v.grid();
  const int n = g.N();
  const int K = v.K();
  const auto stride = static_cast<std::size_t>(K) * 3;
  LatticeField out(g, K, FieldKind::auxiliary);
  for (int a = 0; a < K; ++a) {
    std::array<cvec, 3> s;
    for (int i = 0; i < 3; ++i) s[i] = detail::forward_real(n, v.data().data() + a * 3 + i, stride);
    std::array<cvec, 3> c{cvec(g.sites()), cvec(g.sites()), cvec(g.sites())};
    std::size_t k = 0;
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int j3 = 0; j3 < n; ++j3, ++k) {
          const std::complex<double> d0 = derivative_symbol(g, 0, j1, j2, j3);
          const std::complex<double> d1 = derivative_symbol(g, 1, j1, j2, j3);
          const std::complex<double> d2 = derivative_symbol(g, 2, j1, j2, j3);
          c[0][k] = d1 * s[2][k] - d2 * s[1][k];
          c[1][k] = d2 * s[0][k] - d0 * s[2][k];
          c[2][k] = d0 * s[1][k] - d1 * s[0][k];
        }
    for (int i = 0; i < 3; ++i) detail::inverse_to_real(n, c[i], out.data().data() + a * 3 + i, stride);
  }
  return out;
}

LatticeField transverse_project(const LatticeField& v) {
  require_finite(v, "transverse_project");
  const Grid& g = v.grid();
  const int n = g.N();
  const int K = v.K();
  const auto stride = static_cast<std::size_t>(K) * 3;
  LatticeField out(g, K, v.kind());
  for (int a = 0; a < K; ++a) {
    std::array<cvec, 3> s;
    for (int i = 0; i < 3; ++i) s[i] = detail::forward_real(n, v.data().data() + a * 3 + i, stride);
    std::size_t k = 0;
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int j3 = 0; j3 < n; ++j3, ++k) {
          const double p[3] = {reduced_p(g, j1), reduced_p(g, j2), reduced_p(g, j3)};
          const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
          if (p2 == 0.0) continue;
          const std::complex<double> pv = (p[0] * s[0][k] + p[1] * s[1][k] + p[2] * s[2][k]) / p2;
          for (int i = 0; i < 3; ++i) s[i][k] -= p[i] * pv;
        }
    for (int i = 0; i < 3; ++i) detail::inverse_to_real(n, s[i], out.data().data() + a * 3 + i, stride);
  }
  return out;
}

double coulomb_residual(const LatticeField& A) {
  const ColorScalarField d = divergence(A);
  double worst = 0.0;
  for (double x : d.data()) worst = std::max(worst, std::abs(x));
  return worst;
}

double l2_inner(const LatticeField& u, const LatticeField& v) {
  require_same_shape(u, v, "l2_inner");
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u.data()[k] * v.data()[k];
  return s * u.grid().cell_volume();
}

double l2_inner(const ColorScalarField& u, const ColorScalarField& v) {
  require_same_shape(u, v, "l2_inner");
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u.data()[k] * v.data()[k];
  return s * u.grid().cell_volume();
}

double l2_norm(const LatticeField& u) { return std::sqrt(l2_inner(u, u)); }
double l2_norm(const ColorScalarField& u) { return std::sqrt(l2_inner(u, u)); }

std::vector<double> color_mean(const ColorScalarField& f) {
  std::vector<double> m(static_cast<std::size_t>(f.K()), 0.0);
  for (std::size_t s = 0; s < f.grid().sites(); ++s)
    for (int a = 0; a < f.K(); ++a) m[a] += f.at(s, a);
  for (auto& x : m) x /= static_cast<double>(f.grid().sites());
  return m;
}

}  // namespace ymc
