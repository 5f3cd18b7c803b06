// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/algebra.hpp"

#include <cmath>
#include <string>

#include "ymc/error.hpp"

namespace ymc {

int levi_civita(int a, int b, int c) {
  for (int idx : {a, b, c}) {
    if (idx < 0 || idx > 2) {
      throw DomainError("algebra", "levi_civita.index_range",
                        "index " + std::to_string(idx) + " outside {0,1,2}");
    }
  }
  if (a == b || b == c || a == c) return 0;
  // (b - a)(c - a)(c - b) / 2 is the permutation sign for distinct {0,1,2}.
  return ((b - a) * (c - a) * (c - b)) / 2;
}

StructureConstants::StructureConstants(double g, int K) : K_(K), g_(g) {
  if (K != 3) {
    throw DomainError("algebra", "structure_constants.K",
                      "only K = 3 is supported, got " + std::to_string(K));
  }
  if (!std::isfinite(g) || g < 0.0) {
    throw DomainError("algebra", "structure_constants.g",
                      "coupling must be finite and >= 0, got " + std::to_string(g));
  }
  table_.resize(static_cast<std::size_t>(K * K * K));
  for (int c = 0; c < K; ++c)
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b)
        table_[static_cast<std::size_t>((c * K + a) * K + b)] = g * levi_civita(c, a, b);
}

std::vector<double> commutator(const StructureConstants& sc, std::span<const double> u,
                               std::span<const double> v) {
  const auto K = static_cast<std::size_t>(sc.K());
  if (u.size() != K || v.size() != K) {
    throw DomainError("algebra", "commutator.dimension",
                      "color vectors must have length " + std::to_string(K));
  }
  std::vector<double> w(K, 0.0);
  for (int c = 0; c < sc.K(); ++c)
    for (int a = 0; a < sc.K(); ++a)
      for (int b = 0; b < sc.K(); ++b) w[c] += sc(c, a, b) * u[a] * v[b];
  return w;
}

double jacobi_residual(const StructureConstants& sc) {
  const int K = sc.K();
  double worst = 0.0;
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b)
      for (int c = 0; c < K; ++c)
        for (int d = 0; d < K; ++d) {
          double s = 0.0;
          for (int e = 0; e < K; ++e) {
            s += sc(e, a, b) * sc(d, e, c) + sc(e, b, c) * sc(d, e, a) +
                 sc(e, c, a) * sc(d, e, b);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

LorentzMatrix minkowski_metric() {
  LorentzMatrix eta = LorentzMatrix::Zero();
  eta.diagonal() << 1.0, -1.0, -1.0, -1.0;
  return eta;
}

Matrix2c hermitian_from_vector(const Eigen::Vector4d& x) {
  using cd = std::complex<double>;
  Matrix2c X;
  X << cd(x[0] + x[3], 0.0), cd(x[1], -x[2]), cd(x[1], x[2]), cd(x[0] - x[3], 0.0);
  return X;
}

Eigen::Vector4d vector_from_hermitian(const Matrix2c& X) {
  // x0 = tr(X)/2, x3 = (X00 - X11)/2, x1 = Re X10, x2 = Im X10 (hermitian part).
  const std::complex<double> off = 0.5 * (X(1, 0) + std::conj(X(0, 1)));
  return {0.5 * (X(0, 0).real() + X(1, 1).real()), off.real(), off.imag(),
          0.5 * (X(0, 0).real() - X(1, 1).real())};
}

LorentzMatrix spinor_map(const Matrix2c& P, double tol) {
  const std::complex<double> det = P.determinant();
  if (!(std::abs(det - 1.0) <= tol)) {
    throw DomainError("algebra", "spinor_map.det",
                      "|det P - 1| = " + std::to_string(std::abs(det - 1.0)) + " exceeds tolerance");
  }
  LorentzMatrix lambda;
  for (int mu = 0; mu < 4; ++mu) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[mu] = 1.0;
    lambda.col(mu) = vector_from_hermitian(P * hermitian_from_vector(e) * P.adjoint());
  }
  return lambda;
}

bool is_proper_orthochronous(const LorentzMatrix& lambda, double tol) {
  const LorentzMatrix eta = minkowski_metric();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const bool isometry = (lambda.transpose() * eta * lambda - eta).cwiseAbs().maxCoeff() <=
                        tol * scale * scale;
  const bool proper = std::abs(lambda.determinant() - 1.0) <= tol * std::pow(scale, 4);
  return isometry && proper && lambda(0, 0) >= 1.0 - tol;
}

}  // namespace ymc
