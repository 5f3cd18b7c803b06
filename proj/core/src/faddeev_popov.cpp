// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/faddeev_popov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "ymc/error.hpp"

namespace ymc {

using detail::cvec;

namespace {

// Bin index on the padded axis for wavenumber kappa.
int padded_bin(int n2, int kappa) { return ((kappa % n2) + n2) % n2; }

bool in_window(int n, int j1, int j2, int j3) {
  const int lim = n / 2 - 1;
  return std::abs(detail::kappa(n, j1)) <= lim && std::abs(detail::kappa(n, j2)) <= lim &&
         std::abs(detail::kappa(n, j3)) <= lim;
}

// Copies window modes of an N-grid spectrum into a 2N-grid spectrum, with an
// optional per-mode multiplier, scaled so that values on the fine grid agree.
template <class M>
cvec pad(int n, const cvec& spec, M&& mult) {
  const int n2 = 2 * n;
  cvec out(static_cast<std::size_t>(n2) * n2 * n2, 0.0);
  std::size_t k = 0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3, ++k) {
        if (!in_window(n, j1, j2, j3)) continue;
        const auto b1 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j1)));
        const auto b2 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j2)));
        const auto b3 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j3)));
        out[(b1 * n2 + b2) * n2 + b3] = 8.0 * spec[k] * mult(j1, j2, j3);
      }
  return out;
}

// Inverse of pad restricted to W: fine-grid spectrum -> coarse spectrum.
template <class M>
cvec truncate(int n, const cvec& fine, M&& mult) {
  const int n2 = 2 * n;
  cvec out(static_cast<std::size_t>(n) * n * n, 0.0);
  std::size_t k = 0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3, ++k) {
        if (!in_window(n, j1, j2, j3)) continue;
        const auto b1 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j1)));
        const auto b2 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j2)));
        const auto b3 = static_cast<std::size_t>(padded_bin(n2, detail::kappa(n, j3)));
        out[k] = fine[(b1 * n2 + b2) * n2 + b3] * mult(j1, j2, j3) / 8.0;
      }
  return out;
}

std::vector<double> to_fine_real(int n, cvec fine) {
  const int n2 = 2 * n;
  std::vector<double> out(static_cast<std::size_t>(n2) * n2 * n2);
  detail::inverse_to_real(n2, fine, out.data(), 1);
  return out;
}

}  // namespace

FaddeevPopovOperator::FaddeevPopovOperator(const StructureConstants& sc, const LatticeField& A,
                                           GaugeCheck check, double gauge_tol)
    : sc_(sc), grid_(A.grid()), K_(A.K()), A_(A), n2_(2 * A.grid().N()) {
  if (sc.K() != A.K()) {
    throw DomainError("faddeev_popov", "assemble.K", "field color count differs from algebra");
  }
  require_finite(A, "assemble");
  if (check == GaugeCheck::enforce) {
    const double res = coulomb_residual(A);
    if (!(res < gauge_tol)) {
      std::ostringstream os;
      os << "coulomb residual " << res << " >= gauge_tol " << gauge_tol;
      throw GaugeError("faddeev_popov", "assemble.transverse", os.str());
    }
  }
  const int n = grid_.N();
  const auto stride = static_cast<std::size_t>(K_) * 3;
  A_pad_.resize(static_cast<std::size_t>(K_));
  double amax_sum = 0.0;
  for (int c = 0; c < K_; ++c) {
    for (int k = 0; k < 3; ++k) {
      cvec s = detail::forward_real(n, A.data().data() + c * 3 + k, stride);
      A_pad_[c][k] = to_fine_real(n, pad(n, s, [](int, int, int) { return 1.0; }));
    }
  }
  for (int k = 0; k < 3; ++k) {
    double m = 0.0;
    for (int c = 0; c < K_; ++c)
      for (double x : A_pad_[c][k]) m = std::max(m, std::abs(x));
    amax_sum += m;
  }
  const double pmax = grid_.fundamental() * (n / 2);
  norm_est_ = 3.0 * pmax * pmax + sc.g() * amax_sum * pmax * 2.0;
}

ColorScalarField FaddeevPopovOperator::apply_perturbation(const ColorScalarField& f) const {
  require_shape(f, "apply");
  require_finite(f, "apply");
  const int n = grid_.N();
  const double kf = grid_.fundamental();
  const std::size_t fine = static_cast<std::size_t>(n2_) * n2_ * n2_;
  // df[b][k] = d_k (P_W f^b) on the fine grid.
  std::vector<std::array<std::vector<double>, 3>> df(static_cast<std::size_t>(K_));
  for (int b = 0; b < K_; ++b) {
    const cvec s = detail::forward_real(n, f.data().data() + b, static_cast<std::size_t>(K_));
    for (int k = 0; k < 3; ++k) {
      df[b][k] = to_fine_real(n, pad(n, s, [&](int j1, int j2, int j3) {
        const int j = k == 0 ? j1 : (k == 1 ? j2 : j3);
        return std::complex<double>(0.0, kf * detail::kappa(n, j));
      }));
    }
  }
  ColorScalarField out(grid_, K_);
  for (int a = 0; a < K_; ++a) {
    cvec prod(fine, 0.0);
    for (int c = 0; c < K_; ++c)
      for (int b = 0; b < K_; ++b) {
        const int e = levi_civita(a, c, b);
        if (e == 0) continue;
        for (int k = 0; k < 3; ++k) {
          const auto& Ac = A_pad_[c][k];
          const auto& fb = df[b][k];
          for (std::size_t x = 0; x < fine; ++x) prod[x] += e * Ac[x] * fb[x];
        }
      }
    detail::fft3(n2_, prod.data(), -1);
    cvec coarse = truncate(n, prod, [](int, int, int) { return 1.0; });
    detail::inverse_to_real(n, coarse, out.data().data() + a, static_cast<std::size_t>(K_));
  }
  return out;
}

ColorScalarField FaddeevPopovOperator::apply_perturbation_adjoint(const ColorScalarField& u) const {
  require_shape(u, "apply_adjoint");
  require_finite(u, "apply_adjoint");
  const int n = grid_.N();
  const double kf = grid_.fundamental();
  const std::size_t fine = static_cast<std::size_t>(n2_) * n2_ * n2_;
  std::vector<std::vector<double>> uf(static_cast<std::size_t>(K_));
  for (int a = 0; a < K_; ++a) {
    const cvec s = detail::forward_real(n, u.data().data() + a, static_cast<std::size_t>(K_));
    uf[a] = to_fine_real(n, pad(n, s, [](int, int, int) { return 1.0; }));
  }
  ColorScalarField out(grid_, K_);
  // (V^T u)^b = -sum_k d_k P_W[ sum_{a,c} eps^{acb} A^c_k u^a ].
  for (int b = 0; b < K_; ++b) {
    cvec acc(static_cast<std::size_t>(n) * n * n, 0.0);
    for (int k = 0; k < 3; ++k) {
      cvec q(fine, 0.0);
      for (int a = 0; a < K_; ++a)
        for (int c = 0; c < K_; ++c) {
          const int e = levi_civita(a, c, b);
          if (e == 0) continue;
          const auto& Ac = A_pad_[c][k];
          for (std::size_t x = 0; x < fine; ++x) q[x] += e * Ac[x] * uf[a][x];
        }
      detail::fft3(n2_, q.data(), -1);
      cvec coarse = truncate(n, q, [&](int j1, int j2, int j3) {
        const int j = k == 0 ? j1 : (k == 1 ? j2 : j3);
        return std::complex<double>(0.0, -kf * detail::kappa(n, j));
      });
      for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += coarse[x];
    }
    detail::inverse_to_real(n, acc, out.data().data() + b, static_cast<std::size_t>(K_));
  }
  return out;
}

ColorScalarField FaddeevPopovOperator::apply(const ColorScalarField& f) const {
  ColorScalarField out = laplacian(f);
  if (sc_.g() != 0.0) out.axpy(sc_.g(), apply_perturbation(f));
  return out;
}

ColorScalarField FaddeevPopovOperator::apply_adjoint(const ColorScalarField& f) const {
  ColorScalarField out = laplacian(f);
  if (sc_.g() != 0.0) out.axpy(sc_.g(), apply_perturbation_adjoint(f));
  return out;
}

Preconditioner FaddeevPopovOperator::laplace_preconditioner(double delta) const {
  return [delta](const ColorScalarField& f) {
    // (-Delta + delta)^-1 = (delta - Delta)^-1; reuse the Fourier machinery.
    const Grid& g = f.grid();
    const int n = g.N();
    ColorScalarField out(g, f.K());
    for (int a = 0; a < f.K(); ++a) {
      cvec s = detail::forward_real(n, f.data().data() + a, static_cast<std::size_t>(f.K()));
      std::size_t k = 0;
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2)
          for (int j3 = 0; j3 < n; ++j3, ++k) {
            const double p1 = g.fundamental() * g.kappa(j1);
            const double p2 = g.fundamental() * g.kappa(j2);
            const double p3 = g.fundamental() * g.kappa(j3);
            s[k] /= (p1 * p1 + p2 * p2 + p3 * p3 + delta);
          }
      detail::inverse_to_real(n, s, out.data().data() + a, static_cast<std::size_t>(f.K()));
    }
    return out;
  };
}

SpectralSlice low_spectrum(const FaddeevPopovOperator& L, int m, const EigenOptions& opts) {
  const double k0 = L.grid().fundamental();
  const double delta = 1e-3 * k0 * k0;
  EigenOptions o = opts;
  o.shift = -delta;
  return shift_invert_spectrum(L, m, L.laplace_preconditioner(delta), o);
}

std::vector<ColorScalarField> kernel_basis(const FaddeevPopovOperator& L, const EigenOptions& opts) {
  const int n = static_cast<int>(L.dimension());
  const double tol = L.zero_tol();
  int m = std::min(n, L.K() + 2);
  while (true) {
    SpectralSlice s = low_spectrum(L, m, opts);
    std::vector<ColorScalarField> basis;
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
      if (std::abs(s.eigenvalues[k]) <= tol) basis.push_back(s.eigenvectors[k]);
    if (static_cast<int>(basis.size()) < m || m == n) return basis;
    m = std::min(n, 2 * m);
  }
}

ColorScalarField project_out(const std::vector<ColorScalarField>& basis, const ColorScalarField& u) {
  ColorScalarField out = u;
  for (const auto& psi : basis) out.axpy(-l2_inner(psi, u), psi);
  return out;
}

}  // namespace ymc
