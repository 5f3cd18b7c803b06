// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ymc/error.hpp"

namespace ymc {
namespace {

std::uint64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t j = 1; j <= k; ++j) r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return r;
}

void require_one_particle(const FockSpace& F, const Eigen::VectorXcd& f, const char* op) {
  if (f.size() != F.d()) {
    throw DomainError("fock", std::string(op) + ".dimension", "one-particle vector length differs from d");
  }
}

}  // namespace

FockSpace::FockSpace(int d, int n_max) : d_(d), n_max_(n_max) {
  if (d < 1) throw DomainError("fock", "space.d", "d must be >= 1");
  if (n_max < 0) throw DomainError("fock", "space.n_max", "n_max must be >= 0");
  std::uint64_t total = 0;
  for (int n = 0; n <= n_max; ++n) {
    const std::uint64_t dim = binom(d + n - 1, n);
    total += dim * static_cast<std::uint64_t>(std::max(n, 1));
    if (total > (std::uint64_t{1} << 27)) {
      throw CapacityError("fock", "space.capacity", "truncated Fock space too large");
    }
    dims_.push_back(static_cast<std::size_t>(dim));
  }
  tuples_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) {
    auto& flat = tuples_[static_cast<std::size_t>(n)];
    flat.reserve(dims_[static_cast<std::size_t>(n)] * static_cast<std::size_t>(n));
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    while (true) {
      flat.insert(flat.end(), t.begin(), t.end());
      int p = n - 1;
      while (p >= 0 && t[static_cast<std::size_t>(p)] == d - 1) --p;
      if (p < 0) break;
      const int v = t[static_cast<std::size_t>(p)] + 1;
      for (int q = p; q < n; ++q) t[static_cast<std::size_t>(q)] = v;
    }
  }
}

std::size_t FockSpace::total_dim() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

std::span<const int> FockSpace::tuple(int n, std::size_t r) const noexcept {
  if (n == 0) return {};
  const auto& flat = tuples_[static_cast<std::size_t>(n)];
  return {flat.data() + r * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
}

std::size_t FockSpace::rank(std::span<const int> t) const noexcept {
  const auto n = static_cast<std::int64_t>(t.size());
  std::uint64_t r = 0;
  int lo = 0;
  for (std::int64_t pos = 0; pos < n; ++pos) {
    const std::int64_t rem = n - pos - 1;
    const int tp = t[static_cast<std::size_t>(pos)];
    r += binom(d_ - lo + rem, rem + 1) - binom(d_ - tp + rem, rem + 1);
    lo = tp;
  }
  return static_cast<std::size_t>(r);
}

std::vector<int> FockSpace::occupation(int n, std::size_t r) const {
  std::vector<int> occ(static_cast<std::size_t>(d_), 0);
  for (int i : tuple(n, r)) ++occ[static_cast<std::size_t>(i)];
  return occ;
}

// ---------------------------------------------------------------------------

FockVector FockVector::zero(const FockSpace& F) {
  FockVector v;
  for (int n = 0; n <= F.n_max(); ++n) v.sectors.push_back(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(F.sector_dim(n))));
  return v;
}

FockVector FockVector::vacuum(const FockSpace& F) {
  FockVector v = zero(F);
  v.sectors[0][0] = 1.0;
  return v;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& x : sectors) s += x.squaredNorm();
  return std::sqrt(s);
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (o.sectors.size() != sectors.size()) throw DomainError("fock", "vector.shape", "truncation mismatch");
  for (std::size_t n = 0; n < sectors.size(); ++n) sectors[n] += o.sectors[n];
  discarded_norm_sq += o.discarded_norm_sq;
  return *this;
}

FockVector& FockVector::operator*=(cplx s) {
  for (auto& x : sectors) x *= s;
  discarded_norm_sq *= std::norm(s);
  return *this;
}

int FockVector::top_occupied(double tol) const {
  for (int n = static_cast<int>(sectors.size()) - 1; n >= 0; --n)
    if (sectors[static_cast<std::size_t>(n)].size() > 0 &&
        sectors[static_cast<std::size_t>(n)].cwiseAbs().maxCoeff() > tol)
      return n;
  return -1;
}

FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
FockVector operator-(FockVector a, const FockVector& b) {
  FockVector nb = b;
  nb *= -1.0;
  nb.discarded_norm_sq = b.discarded_norm_sq;
  return a += nb;
}
FockVector operator*(cplx s, FockVector a) { return a *= s; }

cplx inner(const FockVector& u, const FockVector& v) {
  cplx s = 0.0;
  for (std::size_t n = 0; n < u.sectors.size() && n < v.sectors.size(); ++n) s += u.sectors[n].dot(v.sectors[n]);
  return s;
}

cplx inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) { return f.dot(g); }

Eigen::VectorXcd to_flat(const FockVector& v) {
  Eigen::Index total = 0;
  for (const auto& s : v.sectors) total += s.size();
  Eigen::VectorXcd x(total);
  Eigen::Index off = 0;
  for (const auto& s : v.sectors) {
    x.segment(off, s.size()) = s;
    off += s.size();
  }
  return x;
}

FockVector from_flat(const FockSpace& F, const Eigen::VectorXcd& x) {
  if (static_cast<std::size_t>(x.size()) != F.total_dim()) {
    throw DomainError("fock", "from_flat.dimension", "flat vector length differs from Fock dimension");
  }
  FockVector v = FockVector::zero(F);
  Eigen::Index off = 0;
  for (auto& s : v.sectors) {
    s = x.segment(off, s.size());
    off += s.size();
  }
  return v;
}

// ---------------------------------------------------------------------------

FockVector annihilate(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v) {
  require_one_particle(F, f, "annihilate");
  FockVector out = FockVector::zero(F);
  out.discarded_norm_sq = v.discarded_norm_sq;
  std::vector<int> buf;
  for (int n = 1; n <= F.n_max(); ++n) {
    const auto& src = v.sectors[static_cast<std::size_t>(n)];
    auto& dst = out.sectors[static_cast<std::size_t>(n - 1)];
    for (std::size_t r = 0; r < F.sector_dim(n); ++r) {
      const cplx c = src[static_cast<Eigen::Index>(r)];
      if (c == 0.0) continue;
      const auto t = F.tuple(n, r);
      // Walk runs of equal indices; removing one copy of index i from a run of
      // length n_i contributes sqrt(n_i).
      for (std::size_t p = 0; p < t.size();) {
        std::size_t q = p;
        while (q < t.size() && t[q] == t[p]) ++q;
        const int i = t[p];
        const double occ = static_cast<double>(q - p);
        buf.assign(t.begin(), t.end());
        buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(p));
        dst[static_cast<Eigen::Index>(F.rank(buf))] += std::conj(f[i]) * std::sqrt(occ) * c;
        p = q;
      }
    }
  }
  return out;
}

FockVector create(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v) {
  require_one_particle(F, f, "create");
  FockVector out = FockVector::zero(F);
  out.discarded_norm_sq = v.discarded_norm_sq;
  std::vector<int> buf;
  std::vector<int> nz;
  for (int i = 0; i < F.d(); ++i)
    if (f[i] != 0.0) nz.push_back(i);
  for (int n = 0; n < F.n_max(); ++n) {
    const auto& src = v.sectors[static_cast<std::size_t>(n)];
    auto& dst = out.sectors[static_cast<std::size_t>(n + 1)];
    for (std::size_t r = 0; r < F.sector_dim(n); ++r) {
      const cplx c = src[static_cast<Eigen::Index>(r)];
      if (c == 0.0) continue;
      const auto t = F.tuple(n, r);
      for (int i : nz) {
        auto lo = std::lower_bound(t.begin(), t.end(), i);
        auto hi = std::upper_bound(t.begin(), t.end(), i);
        const double occ = static_cast<double>(hi - lo) + 1.0;
        buf.assign(t.begin(), t.end());
        buf.insert(buf.begin() + (lo - t.begin()), i);
        dst[static_cast<Eigen::Index>(F.rank(buf))] += f[i] * std::sqrt(occ) * c;
      }
    }
  }
  // ||a^*(f) v_top||^2 = (f,f) ||v_top||^2 + ||a(f) v_top||^2.
  const int top = F.n_max();
  const auto& vt = v.sectors[static_cast<std::size_t>(top)];
  if (vt.size() > 0 && vt.squaredNorm() > 0.0) {
    FockVector only_top = FockVector::zero(F);
    only_top.sectors[static_cast<std::size_t>(top)] = vt;
    const FockVector down = annihilate(F, f, only_top);
    out.discarded_norm_sq += f.squaredNorm() * vt.squaredNorm() + std::pow(down.norm(), 2);
  }
  return out;
}

FockVector segal_field(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v) {
  const FockVector c = create(F, f, v);
  FockVector out = annihilate(F, f, v);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 0; n < out.sectors.size(); ++n) out.sectors[n] = s * (out.sectors[n] + c.sectors[n]);
  out.discarded_norm_sq = v.discarded_norm_sq + 0.5 * (c.discarded_norm_sq - v.discarded_norm_sq);
  return out;
}

FockVector field_map(const FockSpace& F, const Eigen::VectorXcd& f, const FockVector& v) {
  const Eigen::VectorXcd re = f.real().cast<cplx>();
  const Eigen::VectorXcd im = f.imag().cast<cplx>();
  FockVector out = segal_field(F, re, v);
  FockVector b = segal_field(F, im, v);
  b *= cplx(0.0, 1.0);
  out += b;
  return out;
}

Eigen::MatrixXcd segal_matrix(const FockSpace& F, const Eigen::VectorXcd& f) {
  const auto n = static_cast<Eigen::Index>(F.total_dim());
  Eigen::MatrixXcd M(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    e[k] = 1.0;
    M.col(k) = to_flat(segal_field(F, f, from_flat(F, e)));
    e[k] = 0.0;
  }
  return M;
}

// ---------------------------------------------------------------------------

FockVector SecondQuantizedOperator::apply(const FockVector& v) const {
  FockVector out = v;
  for (std::size_t n = 0; n < blocks_.size() && n < v.sectors.size(); ++n) out.sectors[n] = blocks_[n] * v.sectors[n];
  return out;
}

Eigen::MatrixXcd SecondQuantizedOperator::dense() const {
  Eigen::Index total = 0;
  for (const auto& b : blocks_) total += b.rows();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(total, total);
  Eigen::Index off = 0;
  for (const auto& b : blocks_) {
    M.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return M;
}

SecondQuantizedOperator dGamma(const FockSpace& F, const Eigen::MatrixXcd& A, double tol) {
  if (A.rows() != F.d() || A.cols() != F.d()) {
    throw DomainError("fock", "dGamma.dimension", "matrix size differs from d");
  }
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    throw DomainError("fock", "dGamma.self_adjoint", "A is not self-adjoint");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  std::vector<int> buf;
  for (int n = 0; n <= F.n_max(); ++n) {
    const auto dim = static_cast<Eigen::Index>(F.sector_dim(n));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < F.sector_dim(n); ++r) {
      const auto t = F.tuple(n, r);
      for (std::size_t p = 0; p < t.size();) {
        std::size_t q = p;
        while (q < t.size() && t[q] == t[p]) ++q;
        const int j = t[p];
        const double nj = static_cast<double>(q - p);
        // Remove one j, then add each i.
        std::vector<int> base(t.begin(), t.end());
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(p));
        for (int i = 0; i < F.d(); ++i) {
          if (A(i, j) == 0.0) continue;
          auto lo = std::lower_bound(base.begin(), base.end(), i);
          auto hi = std::upper_bound(base.begin(), base.end(), i);
          const double ni = static_cast<double>(hi - lo) + 1.0;
          buf = base;
          buf.insert(buf.begin() + (lo - base.begin()), i);
          M(static_cast<Eigen::Index>(F.rank(buf)), static_cast<Eigen::Index>(r)) += A(i, j) * std::sqrt(nj * ni);
        }
        p = q;
      }
    }
    blocks.push_back(std::move(M));
  }
  return SecondQuantizedOperator(SecondQuantizedOperator::Kind::dGamma, std::move(blocks));
}

SecondQuantizedOperator Gamma(const FockSpace& F, const Eigen::MatrixXcd& U, double tol) {
  if (U.rows() != F.d() || U.cols() != F.d()) {
    throw DomainError("fock", "Gamma.dimension", "matrix size differs from d");
  }
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(F.d(), F.d());
  if ((U.adjoint() * U - I).cwiseAbs().maxCoeff() > tol) {
    throw DomainError("fock", "Gamma.unitary", "U is not unitary");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n = 0; n <= F.n_max(); ++n) {
    const auto dim = static_cast<Eigen::Index>(F.sector_dim(n));
    Eigen::MatrixXcd M(dim, dim);
    for (std::size_t r = 0; r < F.sector_dim(n); ++r) {
      FockVector v = FockVector::vacuum(F);
      double fact = 1.0;
      const auto t = F.tuple(n, r);
      for (std::size_t p = 0; p < t.size(); ++p) {
        v = create(F, U.col(t[p]), v);
        std::size_t run = 1;
        while (p >= run && t[p - run] == t[p]) ++run;
        fact *= static_cast<double>(run);
      }
      M.col(static_cast<Eigen::Index>(r)) = v.sectors[static_cast<std::size_t>(n)] / std::sqrt(fact);
    }
    blocks.push_back(std::move(M));
  }
  return SecondQuantizedOperator(SecondQuantizedOperator::Kind::Gamma, std::move(blocks));
}

std::vector<double> dGamma_spectrum(const Eigen::MatrixXcd& A, int n, double tol) {
  if (A.rows() != A.cols()) throw DomainError("fock", "dGamma_spectrum.square", "A must be square");
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    throw DomainError("fock", "dGamma_spectrum.self_adjoint", "A is not self-adjoint");
  }
  if (n < 0) throw DomainError("fock", "dGamma_spectrum.n", "n must be >= 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lam = es.eigenvalues();
  const int d = static_cast<int>(lam.size());
  std::vector<double> out;
  if (n == 0) return {0.0};
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    double s = 0.0;
    for (int i : t) s += lam[i];
    out.push_back(s);
    int p = n - 1;
    while (p >= 0 && t[static_cast<std::size_t>(p)] == d - 1) --p;
    if (p < 0) break;
    const int v = t[static_cast<std::size_t>(p)] + 1;
    for (int q = p; q < n; ++q) t[static_cast<std::size_t>(q)] = v;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Eigen::VectorXcd permutation_average(const Eigen::VectorXcd& v, int d, int n, bool alternating) {
  if (n < 0 || n > 6 || d < 1) throw CapacityError("fock", "symmetrize.capacity", "n must be in 0..6");
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) {
    total *= static_cast<std::size_t>(d);
    if (total > kTensorLimit) throw CapacityError("fock", "symmetrize.capacity", "d^n exceeds 4096");
  }
  if (static_cast<std::size_t>(v.size()) != total) {
    throw DomainError("fock", "symmetrize.dimension", "tensor length differs from d^n");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  double count = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n)), pidx(static_cast<std::size_t>(n));
  do {
    // Sign of the permutation by counting inversions.
    int inv = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inv;
    const double sign = alternating && (inv % 2) ? -1.0 : 1.0;
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rem = k;
      for (int p = n - 1; p >= 0; --p) {
        idx[static_cast<std::size_t>(p)] = static_cast<int>(rem % static_cast<std::size_t>(d));
        rem /= static_cast<std::size_t>(d);
      }
      std::size_t dst = 0;
      for (int p = 0; p < n; ++p) {
        pidx[static_cast<std::size_t>(p)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])];
        dst = dst * static_cast<std::size_t>(d) + static_cast<std::size_t>(pidx[static_cast<std::size_t>(p)]);
      }
      out[static_cast<Eigen::Index>(dst)] += sign * v[static_cast<Eigen::Index>(k)];
    }
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out / count;
}

}  // namespace

Eigen::VectorXcd symmetrize(const Eigen::VectorXcd& v, int d, int n) { return permutation_average(v, d, n, false); }
Eigen::VectorXcd antisymmetrize(const Eigen::VectorXcd& v, int d, int n) { return permutation_average(v, d, n, true); }

Eigen::VectorXcd smeared_field_vector(const Grid& grid, int K, std::span<const double> phi, int mu, int a) {
  if (phi.size() != grid.sites()) throw DomainError("fock", "smeared.shape", "phi must have one value per site");
  if (mu < 0 || mu > 3) throw DomainError("fock", "smeared.mu", "mu must be in 0..3");
  if (a < 0 || a >= K) throw DomainError("fock", "smeared.color", "color index out of range");
  const double w = std::sqrt(grid.cell_volume());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.sites() * 4 * K));
  auto slot = [&](std::size_t s, int m, int c) {
    return static_cast<Eigen::Index>((s * 4 + static_cast<std::size_t>(m)) * static_cast<std::size_t>(K) + static_cast<std::size_t>(c));
  };
  if (mu == 0) {
    for (std::size_t s = 0; s < grid.sites(); ++s) out[slot(s, 0, a)] = w * phi[s];
    return out;
  }
  LatticeField v(grid, K, FieldKind::auxiliary);
  for (std::size_t s = 0; s < grid.sites(); ++s) v.at(s, a, mu - 1) = phi[s];
  const LatticeField t = transverse_project(v);
  for (std::size_t s = 0; s < grid.sites(); ++s)
    for (int c = 0; c < K; ++c)
      for (int i = 0; i < 3; ++i) out[slot(s, i + 1, c)] = w * t.at(s, c, i);
  return out;
}

}  // namespace ymc
