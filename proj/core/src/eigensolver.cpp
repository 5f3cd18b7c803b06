// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ymc/error.hpp"
#include "ymc/random.hpp"

namespace ymc {

Eigen::VectorXd to_vector(const ColorScalarField& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data().data(), static_cast<Eigen::Index>(f.size()));
}

ColorScalarField from_vector(const Grid& grid, int K, const Eigen::VectorXd& v) {
  ColorScalarField f(grid, K);
  if (static_cast<std::size_t>(v.size()) != f.size()) {
    throw DomainError("faddeev_popov", "from_vector.shape", "vector length mismatch");
  }
  std::copy(v.data(), v.data() + v.size(), f.data().begin());
  return f;
}

void LatticeOperator::require_shape(const ColorScalarField& f, const char* op) const {
  if (!(f.grid() == grid()) || f.K() != K()) {
    throw DomainError("faddeev_popov", std::string(op) + ".shape", "input shape differs from operator");
  }
}

Eigen::MatrixXd LatticeOperator::materialize() const {
  const std::size_t n = dimension();
  if (n > kDenseLimit) {
    throw CapacityError("faddeev_popov", "materialize.capacity",
                        "N^3 K = " + std::to_string(n) + " exceeds " + std::to_string(kDenseLimit));
  }
  Eigen::MatrixXd M(n, n);
  ColorScalarField e(grid(), K());
  for (std::size_t k = 0; k < n; ++k) {
    e.data()[k] = 1.0;
    M.col(static_cast<Eigen::Index>(k)) = to_vector(apply(e));
    e.data()[k] = 0.0;
  }
  return M;
}

// ---------------------------------------------------------------------------

ColorScalarField minres(const LatticeOperator& op, double shift, const ColorScalarField& b,
                        const Preconditioner& M, double rel_tol, int max_iterations,
                        MinresReport* report) {
  const Grid& grid = op.grid();
  const int K = op.K();
  auto A = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return to_vector(op.apply(from_vector(grid, K, v))) - shift * v;
  };
  auto P = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return M ? to_vector(M(from_vector(grid, K, v))) : v;
  };

  const Eigen::VectorXd bv = to_vector(b);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(bv.size());
  Eigen::VectorXd r1 = bv, r2 = bv;
  Eigen::VectorXd y = P(r1);
  const double beta1_sq = r1.dot(y);
  MinresReport rep;
  if (beta1_sq <= 0.0) {
    if (beta1_sq < 0.0) {
      throw NumericalError("faddeev_popov", "minres.preconditioner", "preconditioner is not positive");
    }
    rep.converged = true;
    if (report) *report = rep;
    return from_vector(grid, K, x);
  }
  const double beta1 = std::sqrt(beta1_sq);
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(bv.size()), w1 = w, w2 = w;

  for (int itn = 1; itn <= max_iterations; ++itn) {
    const Eigen::VectorXd v = y / beta;
    y = A(v);
    if (itn >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = P(r2);
    oldb = beta;
    const double bsq = r2.dot(y);
    if (bsq < 0.0) {
      throw NumericalError("faddeev_popov", "minres.preconditioner", "preconditioner is not positive");
    }
    beta = std::sqrt(bsq);
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), std::numeric_limits<double>::min());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;
    w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;
    rep.iterations = itn;
    rep.relative_residual = phibar / beta1;
    if (rep.relative_residual <= rel_tol || beta == 0.0) {
      rep.converged = true;
      break;
    }
  }
  if (report) *report = rep;
  return from_vector(grid, K, x);
}

// ---------------------------------------------------------------------------

namespace {

struct RitzResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
};

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

Eigen::MatrixXd apply_block(const LatticeOperator& op, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    out.col(j) = to_vector(op.apply(from_vector(op.grid(), op.K(), X.col(j))));
  return out;
}

// Rayleigh-Ritz on span(Q) (orthonormal columns); pairs ordered by distance to shift.
RitzResult rayleigh_ritz(const LatticeOperator& op, const Eigen::MatrixXd& Q, double shift) {
  const Eigen::MatrixXd LQ = apply_block(op, Q);
  Eigen::MatrixXd H = Q.transpose() * LQ;
  H = 0.5 * (H + H.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const Eigen::Index p = Q.cols();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& th = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(th[a] - shift) < std::abs(th[b] - shift);
  });
  RitzResult r;
  r.values.resize(p);
  r.vectors.resize(Q.rows(), p);
  r.residuals.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    r.values[k] = th[j];
    r.vectors.col(k) = Q * es.eigenvectors().col(j);
    const Eigen::VectorXd res = LQ * es.eigenvectors().col(j) - th[j] * r.vectors.col(k);
    r.residuals[k] = res.norm() / r.vectors.col(k).norm();
  }
  return r;
}

SpectralSlice finish(const LatticeOperator& op, const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors,
                     const Eigen::VectorXd& residuals, int m, SpectralSlice::Which which) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
  SpectralSlice out;
  out.which = which;
  const double scale = 1.0 / std::sqrt(op.grid().cell_volume());
  for (int k : idx) {
    out.eigenvalues.push_back(values[k]);
    Eigen::VectorXd v = vectors.col(k).normalized() * scale;
    out.eigenvectors.push_back(from_vector(op.grid(), op.K(), v));
    out.residuals.push_back(residuals[k]);
  }
  return out;
}

}  // namespace

SpectralSlice shift_invert_spectrum(const LatticeOperator& op, int m, const Preconditioner& M,
                                    const EigenOptions& opts) {
  const auto n = static_cast<Eigen::Index>(op.dimension());
  if (m < 1 || m > n) {
    throw DomainError("faddeev_popov", "low_spectrum.m",
                      "m must be in 1.." + std::to_string(n) + ", got " + std::to_string(m));
  }
  int margin = opts.margin >= 0 ? opts.margin : std::max(4, m / 2);
  std::ostringstream history;

  while (true) {
    const Eigen::Index p = std::min<Eigen::Index>(n, m + margin);
    SplitMix64 rng(opts.seed);
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index i = 0; i < n; ++i) X(i, j) = rng.symmetric(1.0);

    if (p == n) {
      // The block is the whole space: one Rayleigh-Ritz step is exact.
      RitzResult r = rayleigh_ritz(op, orthonormalize(X), opts.shift);
      return finish(op, r.values, r.vectors, r.residuals, m, SpectralSlice::Which::near_zero);
    }

    Eigen::MatrixXd Q = orthonormalize(X);
    double worst = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iterations; ++it) {
      Eigen::MatrixXd Y(n, p);
      for (Eigen::Index j = 0; j < p; ++j) {
        MinresReport rep;
        ColorScalarField sol = minres(op, opts.shift, from_vector(op.grid(), op.K(), Q.col(j)), M,
                                      opts.inner_tol, opts.inner_max_iterations, &rep);
        Y.col(j) = to_vector(sol);
      }
      Q = orthonormalize(Y);
      RitzResult r = rayleigh_ritz(op, Q, opts.shift);
      Q = r.vectors;
      worst = r.residuals.head(m).maxCoeff();
      if (worst < opts.eig_tol) {
        return finish(op, r.values, r.vectors, r.residuals, m, SpectralSlice::Which::near_zero);
      }
    }
    history << "block " << p << ": worst residual " << worst << "; ";
    if (p == n) break;
    margin = static_cast<int>(std::min<Eigen::Index>(n - m, 2 * (m + margin) - m));
  }
  throw NumericalError("faddeev_popov", "low_spectrum.convergence",
                       "subspace iteration did not converge (" + history.str() + ")");
}

SpectralSlice dense_spectrum(const LatticeOperator& op) {
  const Eigen::MatrixXd L = op.materialize();
  const Eigen::MatrixXd S = 0.5 * (L + L.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const Eigen::Index n = S.rows();
  Eigen::VectorXd res(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd v = es.eigenvectors().col(k);
    res[k] = (L * v - es.eigenvalues()[k] * v).norm();
  }
  SpectralSlice out = finish(op, es.eigenvalues(), es.eigenvectors(), res, static_cast<int>(n),
                             SpectralSlice::Which::lowest);
  return out;
}

}  // namespace ymc
