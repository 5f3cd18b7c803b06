// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/greens.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "ymc/error.hpp"
#include "ymc/random.hpp"

namespace ymc {
namespace {

// D = Delta^+.
ColorScalarField laplace_pinv(const ColorScalarField& f) {
  ColorScalarField u = free_green_apply(f);
  u *= -1.0;
  return u;
}

void require_born_coupling(double g) {
  if (!(g < 1.0)) {
    std::ostringstream os;
    os << "Born series requires g < 1, got " << g;
    throw DomainError("greens", "born.coupling", os.str());
  }
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

// Series terms u_0..u_n of K_n f.
std::vector<ColorScalarField> born_terms(const FaddeevPopovOperator& L, const ColorScalarField& f,
                                         int n_terms) {
  std::vector<ColorScalarField> terms;
  terms.reserve(static_cast<std::size_t>(n_terms) + 1);
  terms.push_back(laplace_pinv(f));
  for (int m = 1; m <= n_terms; ++m) {
    ColorScalarField next = laplace_pinv(L.apply_perturbation(terms.back()));
    next *= -L.g();
    for (double x : next.data()) {
      if (!std::isfinite(x)) {
        throw NumericalError("greens", "born.term", "non-finite term at order " + std::to_string(m));
      }
    }
    terms.push_back(std::move(next));
  }
  return terms;
}

}  // namespace

std::vector<ColorScalarField> constant_basis(const Grid& grid, int K) {
  std::vector<ColorScalarField> basis;
  const double v = 1.0 / std::sqrt(std::pow(grid.L_box(), 3));
  for (int a = 0; a < K; ++a) {
    ColorScalarField c(grid, K);
    for (std::size_t s = 0; s < grid.sites(); ++s) c.at(s, a) = v;
    basis.push_back(std::move(c));
  }
  return basis;
}

BornResult born_apply(const FaddeevPopovOperator& L, const ColorScalarField& f, int n_terms,
                      const BornOptions& opts) {
  require_born_coupling(L.g());
  if (n_terms < 0) throw DomainError("greens", "born.n_terms", "n_terms must be >= 0");
  if (!(f.grid() == L.grid()) || f.K() != L.K()) {
    throw DomainError("greens", "born.shape", "input shape differs from operator");
  }
  require_finite(f, "born");

  const std::vector<ColorScalarField> terms = born_terms(L, f, n_terms);
  BornResult out{ColorScalarField(L.grid(), L.K()), {}};
  const double fnorm = l2_norm(f);
  for (const auto& t : terms) {
    out.value += t;
    out.report.term_norms.push_back(fnorm > 0.0 ? l2_norm(t) / fnorm : 0.0);
  }
  out.report.n_terms = n_terms;
  if (n_terms >= 2) {
    const auto& tn = out.report.term_norms;
    out.report.diverging = tn[static_cast<std::size_t>(n_terms)] > 0.0 &&
                           tn[static_cast<std::size_t>(n_terms)] >= tn[static_cast<std::size_t>(n_terms - 1)];
  }
  if (!opts.report) return out;

  // Residual history on seeded probes: r_m = ||L K_m q - (I - P) q|| / ||q||.
  const auto kernel = constant_basis(L.grid(), L.K());
  std::vector<double> res(static_cast<std::size_t>(n_terms) + 1, 0.0);
  for (int p = 0; p < opts.probes; ++p) {
    const ColorScalarField q = generate_scalar_field(L.grid(), L.K(), opts.probe_seed + static_cast<std::uint64_t>(p));
    const double qn = l2_norm(q);
    const ColorScalarField target = project_out(kernel, q);
    const auto qt = born_terms(L, q, n_terms);
    ColorScalarField partial(L.grid(), L.K());
    for (int m = 0; m <= n_terms; ++m) {
      partial += qt[static_cast<std::size_t>(m)];
      const double r = l2_norm(L.apply(partial) - target) / qn;
      res[static_cast<std::size_t>(m)] = std::max(res[static_cast<std::size_t>(m)], r);
    }
  }
  out.report.residuals = res;
  std::vector<double> xs, ys;
  for (int m = 1; m <= n_terms; ++m) {
    const double r = res[static_cast<std::size_t>(m)];
    if (r > 0.0) {
      xs.push_back(m);
      ys.push_back(std::log(r));
    }
  }
  if (xs.size() >= 2) {
    out.report.fitted_log_rate = ls_slope(xs, ys);
    out.report.fitted_ratio = std::exp(out.report.fitted_log_rate);
  }
  return out;
}

BornResult born_apply(const StructureConstants& sc, const LatticeField& A, const ColorScalarField& f,
                      int n_terms, const BornOptions& opts) {
  require_born_coupling(sc.g());
  return born_apply(FaddeevPopovOperator(sc, A), f, n_terms, opts);
}

ColorScalarField born_apply_transpose(const FaddeevPopovOperator& L, const ColorScalarField& f, int n_terms) {
  require_born_coupling(L.g());
  ColorScalarField z = f;
  ColorScalarField sum = f;
  for (int m = 1; m <= n_terms; ++m) {
    z = L.apply_perturbation_adjoint(laplace_pinv(z));
    z *= -L.g();
    sum += z;
  }
  return laplace_pinv(sum);
}

// ---------------------------------------------------------------------------

double born_spectral_radius(const FaddeevPopovOperator& L) {
  const Grid& grid = L.grid();
  const int K = L.K();
  // (-Delta^+)^{1/2}: multiplier 1/|p| off the zero mode.
  auto half = [&](const ColorScalarField& f) {
    ColorScalarField out(grid, K);
    const int n = grid.N();
    for (int a = 0; a < K; ++a) {
      detail::cvec s = detail::forward_real(n, f.data().data() + a, static_cast<std::size_t>(K));
      std::size_t k = 0;
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2)
          for (int j3 = 0; j3 < n; ++j3, ++k) {
            const double p1 = grid.fundamental() * grid.kappa(j1);
            const double p2 = grid.fundamental() * grid.kappa(j2);
            const double p3 = grid.fundamental() * grid.kappa(j3);
            const double p = std::sqrt(p1 * p1 + p2 * p2 + p3 * p3);
            s[k] = p == 0.0 ? 0.0 : s[k] / p;
          }
      detail::inverse_to_real(n, s, out.data().data() + a, static_cast<std::size_t>(K));
    }
    return out;
  };
  auto S = [&](const Eigen::VectorXd& v) {
    return to_vector(half(L.apply_perturbation(half(from_vector(grid, K, v)))));
  };

  const auto dim = static_cast<Eigen::Index>(L.dimension());
  const int steps = static_cast<int>(std::min<Eigen::Index>(dim, 80));
  Eigen::MatrixXd Q(dim, steps + 1);
  SplitMix64 rng(0x5eedULL);
  Eigen::VectorXd q(dim);
  for (Eigen::Index i = 0; i < dim; ++i) q[i] = rng.symmetric(1.0);
  // Remove the zero mode, which S annihilates.
  q = to_vector(project_out(constant_basis(grid, K), from_vector(grid, K, q)));
  q.normalize();
  Q.col(0) = q;
  std::vector<double> alpha, beta;
  int used = 0;
  for (int j = 0; j < steps; ++j) {
    Eigen::VectorXd w = S(Q.col(j));
    const double a = Q.col(j).dot(w);
    alpha.push_back(a);
    used = j + 1;
    // Full reorthogonalization (twice).
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
    const double b = w.norm();
    if (b < 1e-12 * std::max(1.0, std::abs(a))) break;
    beta.push_back(b);
    Q.col(j + 1) = w / b;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
  for (int j = 0; j < used; ++j) {
    T(j, j) = alpha[static_cast<std::size_t>(j)];
    if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = beta[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double born_spectral_radius(const LatticeField& A) {
  return born_spectral_radius(FaddeevPopovOperator(StructureConstants(1.0, A.K()), A));
}

LatticeField normalize_for_born(const LatticeField& A) {
  const double r = born_spectral_radius(A);
  LatticeField out = A;
  if (r > 0.0) out *= 1.0 / r;
  return out;
}

// ---------------------------------------------------------------------------

GreensOperator GreensOperator::born(const FaddeevPopovOperator& L, int n_terms, KernelSource kernel) {
  require_born_coupling(L.g());
  if (n_terms < 0) throw DomainError("greens", "born.n_terms", "n_terms must be >= 0");
  GreensOperator G;
  G.L_ = std::make_shared<const FaddeevPopovOperator>(L);
  G.method_ = GreensMethod::born;
  G.n_terms_ = n_terms;
  G.kernel_ = kernel == KernelSource::constants ? constant_basis(L.grid(), L.K()) : kernel_basis(L);
  return G;
}

GreensOperator GreensOperator::pseudoinverse(const FaddeevPopovOperator& L) {
  if (L.dimension() > kDenseLimit) {
    throw CapacityError("greens", "pseudoinverse.capacity",
                        "dense oracle needs N^3 K <= " + std::to_string(kDenseLimit));
  }
  GreensOperator G;
  G.L_ = std::make_shared<const FaddeevPopovOperator>(L);
  G.method_ = GreensMethod::pseudoinverse;
  const Eigen::MatrixXd M = L.materialize();
  const Eigen::MatrixXd S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const double tol = L.zero_tol();
  const auto n = S.rows();
  G.dense_ = Eigen::MatrixXd::Zero(n, n);
  const double scale = 1.0 / std::sqrt(L.grid().cell_volume());
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = es.eigenvalues()[k];
    const Eigen::VectorXd v = es.eigenvectors().col(k);
    if (std::abs(lam) <= tol) {
      G.kernel_.push_back(from_vector(L.grid(), L.K(), v * scale));
    } else {
      G.dense_.noalias() += (v / lam) * v.transpose();
    }
  }
  return G;
}

ColorScalarField GreensOperator::apply(const ColorScalarField& f) const {
  require_shape(f, "green_apply");
  require_finite(f, "green_apply");
  if (method_ == GreensMethod::pseudoinverse) {
    return from_vector(grid(), K(), dense_ * to_vector(f));
  }
  const ColorScalarField q = complement(f);
  BornOptions quiet;
  quiet.report = false;
  BornResult b = born_apply(*L_, q, n_terms_, quiet);
  if (b.report.diverging) {
    throw NumericalError("greens", "born.divergence",
                         "series terms stopped decreasing; g * born_spectral_radius(A) >= 1?");
  }
  ColorScalarField k = std::move(b.value);
  k += born_apply_transpose(*L_, q, n_terms_);
  k *= 0.5;
  return complement(k);
}

double green_defect(const GreensOperator& G, int probes, std::uint64_t seed) {
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const ColorScalarField q = generate_scalar_field(G.grid(), G.K(), seed + static_cast<std::uint64_t>(p));
    const ColorScalarField d = G.op().apply(G.apply(q)) - G.complement(q);
    worst = std::max(worst, l2_norm(d) / l2_norm(q));
  }
  return worst;
}

Eigen::MatrixXd green_point_kernel(const GreensOperator& G, std::size_t x0, std::size_t y0) {
  const int K = G.K();
  const std::size_t n = G.grid().sites();
  if (x0 >= n || y0 >= n) throw DomainError("greens", "point_kernel.site", "site index out of range");
  Eigen::MatrixXd out(K, K);
  for (int b = 0; b < K; ++b) {
    ColorScalarField delta(G.grid(), K);
    delta.at(y0, b) = 1.0 / G.grid().cell_volume();
    const ColorScalarField col = G.apply(delta);
    for (int a = 0; a < K; ++a) out(a, b) = col.at(x0, a);
  }
  return out;
}

}  // namespace ymc
