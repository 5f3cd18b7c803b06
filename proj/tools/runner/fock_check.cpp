// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/fock_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "ymc/error.hpp"
#include "ymc/fock.hpp"
#include "ymc/lattice.hpp"
#include "ymc/random.hpp"

namespace ymc::runner {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kCcrTol = 1e-12;
constexpr double kSegalTol = 1e-12;
constexpr double kWeylTol = 1e-8;
constexpr double kGammaTol = 1e-12;
constexpr double kSpectrumTol = 1e-10;
constexpr double kW7Tol = 1e-12;
// Norm of the one-particle vectors in the Weyl suite; keeps the truncation
// error of the exponentials far below kWeylTol.
constexpr double kWeylNorm = 0.05;

Eigen::VectorXcd random_vector(SplitMix64& rng, int d, double norm = 1.0) {
  Eigen::VectorXcd f(d);
  for (int i = 0; i < d; ++i) {
    const double re = rng.symmetric(1.0);
    const double im = rng.symmetric(1.0);
    f[i] = cplx(re, im);
  }
  return f * (norm / f.norm());
}

// Random state supported on sectors 0..top.
FockVector random_state(SplitMix64& rng, const FockSpace& F, int top) {
  FockVector v = FockVector::zero(F);
  for (int n = 0; n <= top; ++n) {
    auto& s = v.sectors[static_cast<std::size_t>(n)];
    for (Eigen::Index r = 0; r < s.size(); ++r) {
      const double re = rng.symmetric(1.0);
      const double im = rng.symmetric(1.0);
      s[r] = cplx(re, im);
    }
  }
  v *= cplx(1.0 / v.norm(), 0.0);
  return v;
}

Eigen::MatrixXcd random_hermitian(SplitMix64& rng, int d) {
  Eigen::MatrixXcd M(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = rng.symmetric(1.0);
      const double im = rng.symmetric(1.0);
      M(i, j) = cplx(re, im);
    }
  }
  return 0.5 * (M + M.adjoint());
}

Eigen::MatrixXcd random_unitary(SplitMix64& rng, int d) {
  const Eigen::MatrixXcd H = random_hermitian(rng, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i) phases[i] = std::exp(cplx(0.0, es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double norm_diff(const FockVector& a, const FockVector& b) { return (a - b).norm(); }

Json suite(double max_dev, double tol, bool pass) {
  Json j;
  j["pass"] = pass;
  j["max_deviation"] = max_dev;
  j["tol"] = tol;
  return j;
}

Json ccr_suite(SplitMix64& rng, const FockSpace& F) {
  // [a(f), a*(g)] v = (f, g) v on sectors <= n_max - 1, plus adjointness of
  // create and annihilate.
  double dev = 0.0;
  double adj = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::VectorXcd f = random_vector(rng, F.d());
    const Eigen::VectorXcd g = random_vector(rng, F.d());
    const FockVector v = random_state(rng, F, F.n_max() - 1);
    const FockVector lhs = annihilate(F, f, create(F, g, v)) - create(F, g, annihilate(F, f, v));
    dev = std::max(dev, norm_diff(lhs, inner(f, g) * v));

    const FockVector u = random_state(rng, F, F.n_max());
    adj = std::max(adj, std::abs(inner(create(F, f, v), u) - inner(v, annihilate(F, f, u))));
  }
  Json j = suite(std::max(dev, adj), kCcrTol, dev < kCcrTol && adj < kCcrTol);
  j["commutator_deviation"] = dev;
  j["adjoint_deviation"] = adj;
  return j;
}

Json segal_suite(SplitMix64& rng, const FockSpace& F) {
  // [Phi(f), Phi(g)] v = i Im(f, g) v for v avoiding the top two sectors.
  double dev = 0.0;
  double real_multiple = 0.0;
  const int top = std::max(F.n_max() - 2, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::VectorXcd f = random_vector(rng, F.d());
    const Eigen::VectorXcd g = random_vector(rng, F.d());
    const FockVector v = random_state(rng, F, top);
    const FockVector lhs = segal_field(F, f, segal_field(F, g, v)) - segal_field(F, g, segal_field(F, f, v));
    dev = std::max(dev, norm_diff(lhs, cplx(0.0, inner(f, g).imag()) * v));

    const Eigen::VectorXcd h = 0.7 * f;
    const FockVector zero = segal_field(F, f, segal_field(F, h, v)) - segal_field(F, h, segal_field(F, f, v));
    real_multiple = std::max(real_multiple, zero.norm());
  }
  const double worst = std::max(dev, real_multiple);
  Json j = suite(worst, kSegalTol, worst < kSegalTol);
  j["real_multiple_commutator"] = real_multiple;
  return j;
}

// exp(i t M) for Hermitian M.
Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
  Eigen::VectorXcd phases(M.rows());
  for (Eigen::Index i = 0; i < M.rows(); ++i) phases[i] = std::exp(cplx(0.0, es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Json weyl_suite(SplitMix64& rng, int d, int nmax) {
  // exp(i Phi(f+g)) = exp((i/2) Im(f,g)) exp(i Phi(f)) exp(i Phi(g)) on
  // vectors supported below the top three sectors, compared on all but the
  // top two. The phase
  // sign follows from [Phi(f), Phi(g)] = i Im(f,g) with (f,g) conjugate-linear
  // in f; see docs/conventions.md.
  const FockSpace F(d, nmax);
  const int top = std::max(nmax - 2, 0);
  std::size_t keep = 0;
  for (int n = 0; n <= top; ++n) keep += F.sector_dim(n);
  double dev = 0.0;
  double control = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXcd f = random_vector(rng, d, kWeylNorm);
    const Eigen::VectorXcd g = random_vector(rng, d, kWeylNorm);
    const double im = inner(f, g).imag();
    const Eigen::MatrixXcd Wfg = exp_i_hermitian(segal_matrix(F, f + g));
    const Eigen::MatrixXcd WfWg = exp_i_hermitian(segal_matrix(F, f)) * exp_i_hermitian(segal_matrix(F, g));
    const Eigen::VectorXcd x = to_flat(random_state(rng, F, std::max(nmax - 3, 0)));
    const Eigen::VectorXcd lhs = (Wfg * x).head(static_cast<Eigen::Index>(keep));
    const Eigen::VectorXcd rhs = (WfWg * x).head(static_cast<Eigen::Index>(keep));
    dev = std::max(dev, (lhs - std::exp(cplx(0.0, 0.5 * im)) * rhs).norm());
    // Wrong-sign phase must be detectably different.
    control = std::min(control, (lhs - std::exp(cplx(0.0, -0.5 * im)) * rhs).norm());
  }
  Json j = suite(dev, kWeylTol, dev < kWeylTol && control > 1e3 * kWeylTol);
  j["d"] = d;
  j["nmax"] = nmax;
  j["wrong_sign_deviation"] = control;
  return j;
}

Json gamma_suite(SplitMix64& rng, const FockSpace& F) {
  // Gamma(U) Phi(f) Gamma(U)^-1 v = Phi(U f) v.
  const Eigen::MatrixXcd U = random_unitary(rng, F.d());
  const SecondQuantizedOperator G = Gamma(F, U);
  const SecondQuantizedOperator Ginv = Gamma(F, U.adjoint());
  double dev = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::VectorXcd f = random_vector(rng, F.d());
    const FockVector v = random_state(rng, F, F.n_max() - 1);
    const FockVector lhs = G.apply(segal_field(F, f, Ginv.apply(v)));
    dev = std::max(dev, norm_diff(lhs, segal_field(F, U * f, v)));
  }
  FockVector omega = FockVector::vacuum(F);
  dev = std::max(dev, norm_diff(G.apply(omega), omega));
  return suite(dev, kGammaTol, dev < kGammaTol);
}

Json dgamma_suite(SplitMix64& rng, const FockSpace& F) {
  const Eigen::MatrixXcd A = random_hermitian(rng, F.d());
  const SecondQuantizedOperator dG = dGamma(F, A);
  double dev = 0.0;
  for (int n = 0; n <= F.n_max(); ++n) {
    const Eigen::MatrixXcd& block = dG.sector(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (block + block.adjoint()));
    const std::vector<double> expect = dGamma_spectrum(A, n);
    if (static_cast<Eigen::Index>(expect.size()) != es.eigenvalues().size()) {
      dev = std::numeric_limits<double>::infinity();
      continue;
    }
    for (std::size_t k = 0; k < expect.size(); ++k) {
      dev = std::max(dev, std::abs(es.eigenvalues()[static_cast<Eigen::Index>(k)] - expect[k]));
    }
  }
  // Number operator: dGamma(I) is n on sector n.
  const SecondQuantizedOperator N = dGamma(F, Eigen::MatrixXcd::Identity(F.d(), F.d()));
  for (int n = 0; n <= F.n_max(); ++n) {
    const auto& b = N.sector(n);
    dev = std::max(dev, (b - static_cast<double>(n) * Eigen::MatrixXcd::Identity(b.rows(), b.cols())).norm());
  }
  return suite(dev, kSpectrumTol, dev < kSpectrumTol);
}

Json w7_suite(std::uint64_t seed) {
  // Temporal (mu = 0) smeared fields on one time slice: disjoint supports give
  // commuting Segal fields. A complex phase makes the check non-vacuous; the
  // overlapping control must show a nonzero commutator.
  const Grid grid(4);
  const int K = 3;
  const int d = static_cast<int>(grid.sites()) * 4 * K;
  const FockSpace F(d, 2);
  SplitMix64 rng(seed);
  std::vector<double> phi(grid.sites(), 0.0);
  std::vector<double> chi(grid.sites(), 0.0);
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const double v = rng.symmetric(1.0);
    (grid.coords(s)[0] < grid.N() / 2 ? phi : chi)[s] = v;
  }
  const Eigen::VectorXcd f = smeared_field_vector(grid, K, phi, 0, 1);
  const Eigen::VectorXcd g = cplx(0.0, 1.0) * smeared_field_vector(grid, K, chi, 0, 1);
  const Eigen::VectorXcd g_overlap = cplx(0.0, 1.0) * smeared_field_vector(grid, K, phi, 0, 1);
  const FockVector omega = FockVector::vacuum(F);
  auto commutator = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (segal_field(F, a, segal_field(F, b, omega)) - segal_field(F, b, segal_field(F, a, omega))).norm();
  };
  const double disjoint = commutator(f, g);
  const double overlap = commutator(f, g_overlap);
  Json j = suite(disjoint, kW7Tol, disjoint < kW7Tol && overlap > 1e-6);
  j["overlap_commutator"] = overlap;
  j["one_particle_dim"] = d;
  return j;
}

Json cyclicity_suite(SplitMix64& rng, const FockSpace& F) {
  // Products Phi(f_1)...Phi(f_k) Omega over random f span the truncated space.
  const Eigen::Index dim = static_cast<Eigen::Index>(F.total_dim());
  const Eigen::Index cols = 2 * dim;
  Eigen::MatrixXcd M(dim, cols);
  Eigen::Index c = 0;
  for (int k = 0; k <= F.n_max(); ++k) {
    // Twice as many length-k products as sector k has states.
    for (std::size_t r = 0; r < 2 * F.sector_dim(k); ++r, ++c) {
      FockVector v = FockVector::vacuum(F);
      for (int j = 0; j < k; ++j) v = segal_field(F, random_vector(rng, F.d()), v);
      M.col(c) = to_flat(v) / to_flat(v).norm();
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
  qr.setThreshold(1e-10);
  const auto rank = qr.rank();
  Json j;
  j["pass"] = rank == dim;
  j["rank"] = rank;
  j["dimension"] = dim;
  return j;
}

}  // namespace

nlohmann::ordered_json run_fock_check(const FockCheckOptions& opts) {
  if (opts.d < 1) throw DomainError("fock", "check.d", "d must be >= 1");
  if (opts.nmax < 2) throw DomainError("fock", "check.nmax", "nmax must be >= 2");
  const FockSpace F(opts.d, opts.nmax);
  SplitMix64 rng(opts.seed);
  Json out;
  out["d"] = opts.d;
  out["nmax"] = opts.nmax;
  out["seed"] = opts.seed;
  Json suites;
  suites["ccr"] = ccr_suite(rng, F);
  suites["segal"] = segal_suite(rng, F);
  suites["weyl"] = weyl_suite(rng, std::min(opts.d, 3), std::min(opts.nmax, 5));
  suites["gamma_covariance"] = gamma_suite(rng, F);
  suites["dgamma_spectrum"] = dgamma_suite(rng, F);
  suites["w7"] = w7_suite(opts.seed);
  suites["cyclicity"] = cyclicity_suite(rng, F);
  bool all = true;
  for (const auto& [name, s] : suites.items()) all = all && s["pass"].get<bool>();
  out["suites"] = suites;
  out["all_pass"] = all;
  return out;
}

}  // namespace ymc::runner
