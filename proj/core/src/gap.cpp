// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/gap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "ymc/error.hpp"
#include "ymc/fields.hpp"
#include "ymc/greens.hpp"
#include "ymc/random.hpp"

namespace ymc {

double h2_density(const StructureConstants& sc, const LatticeField& A) {
  if (sc.K() != A.K()) throw DomainError("gap", "h2_density.K", "field color count differs from algebra");
  const Grid& grid = A.grid();
  const int K = A.K();
  const std::array<LatticeField, 3> dA{spectral_derivative(A, 0), spectral_derivative(A, 1),
                                       spectral_derivative(A, 2)};
  double total = 0.0;
  for (std::size_t s = 0; s < grid.sites(); ++s)
    for (int a = 0; a < K; ++a)
      for (int i = 0; i < 3; ++i) {
        double x = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const int e = levi_civita(i, j, k);
            if (e == 0) continue;
            double q = dA[j].at(s, a, k) - dA[k].at(s, a, j);
            for (int b = 0; b < K; ++b)
              for (int c = 0; c < K; ++c) q += sc(a, b, c) * A.at(s, b, j) * A.at(s, c, k);
            x += e * q;
          }
        total += x * x;
      }
  return total * grid.cell_volume() / 16.0;
}

const char* to_string(ReciprocalIntegral::Flag f) noexcept {
  switch (f) {
    case ReciprocalIntegral::Flag::ok: return "ok";
    case ReciprocalIntegral::Flag::pv: return "pv";
    case ReciprocalIntegral::Flag::singular: return "singular";
    case ReciprocalIntegral::Flag::unconverged: return "unconverged";
  }
  return "ok";
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("gap", "gauss_legendre.n", "node count must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(k)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - k)] = x;
    weights[static_cast<std::size_t>(k)] = weights[static_cast<std::size_t>(n - 1 - k)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

namespace {

struct Pass {
  double value = 0.0;
  bool singular = false;
  double max_inverse = 0.0;
};

// One Gauss-Legendre pass with n nodes of integrand(s) on [lo, hi], where the
// integrand is built from h values. Sign changes of h between neighbours cut
// out a window around the interpolated zero, and the remaining pieces are
// integrated with the same rule.
Pass gl_pass(const std::function<double(double)>& h, double lo, double hi, int n, bool fold) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  auto integrand = [&](double s, double& inv_abs) {
    if (fold) {
      const double hp = h(s), hm = h(-s);
      inv_abs = std::max(1.0 / std::abs(hp), 1.0 / std::abs(hm));
      return 1.0 / hp + 1.0 / hm;
    }
    const double v = h(s);
    inv_abs = 1.0 / std::abs(v);
    return 1.0 / v;
  };
  auto rule = [&](double a, double b, Pass& p) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < n; ++k) {
      double inv = 0.0;
      const double f = integrand(mid + half * x[static_cast<std::size_t>(k)], inv);
      p.max_inverse = std::max(p.max_inverse, inv);
      p.value += half * w[static_cast<std::size_t>(k)] * f;
    }
  };

  Pass out;
  if (fold) {
    rule(lo, hi, out);
    return out;
  }
  // Locate sign changes on the nodes of [lo, hi].
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> s(static_cast<std::size_t>(n)), hv(static_cast<std::size_t>(n));
  bool all_zero = true;
  for (int k = 0; k < n; ++k) {
    s[static_cast<std::size_t>(k)] = mid + half * x[static_cast<std::size_t>(k)];
    hv[static_cast<std::size_t>(k)] = h(s[static_cast<std::size_t>(k)]);
    if (hv[static_cast<std::size_t>(k)] != 0.0) all_zero = false;
  }
  if (all_zero) throw DomainError("gap", "denominator.degenerate_family", "h vanishes on every node");
  std::vector<double> zeros;
  for (int k = 0; k + 1 < n; ++k) {
    const double a = hv[static_cast<std::size_t>(k)], b = hv[static_cast<std::size_t>(k + 1)];
    if (a == 0.0) {
      zeros.push_back(s[static_cast<std::size_t>(k)]);
    } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
      const double sa = s[static_cast<std::size_t>(k)], sb = s[static_cast<std::size_t>(k + 1)];
      zeros.push_back(sa - a * (sb - sa) / (b - a));
    }
  }
  if (hv.back() == 0.0) zeros.push_back(s.back());
  if (zeros.empty()) {
    rule(lo, hi, out);
    return out;
  }
  out.singular = true;
  const double window = (hi - lo) / n;  // half of 2 * node spacing
  double start = lo;
  for (double z : zeros) {
    const double stop = std::max(start, z - window);
    if (stop > start) rule(start, stop, out);
    start = std::min(hi, std::max(start, z + window));
  }
  if (hi > start) rule(start, hi, out);
  return out;
}

}  // namespace

ReciprocalIntegral integrate_reciprocal(const std::function<double(double)>& h, double R,
                                        const QuadratureOptions& opts) {
  if (!(R > 0.0)) throw DomainError("gap", "denominator.R_amp", "integration half-range must be > 0");
  const bool fold = opts.principal_value;
  const double lo = fold ? 0.0 : -R;
  ReciprocalIntegral res;
  int n = std::max(2, opts.initial_nodes);
  Pass prev = gl_pass(h, lo, R, n, fold);
  double max_inv = prev.max_inverse;
  while (true) {
    const int n2 = 2 * n;
    if (n2 > opts.max_nodes) {
      res.flag = ReciprocalIntegral::Flag::unconverged;
      break;
    }
    Pass cur = gl_pass(h, lo, R, n2, fold);
    max_inv = std::max(max_inv, cur.max_inverse);
    const double change = std::abs(cur.value - prev.value);
    n = n2;
    prev = cur;
    if (change <= opts.rel_tol * std::abs(cur.value)) break;
  }
  res.value = prev.value;
  res.nodes = n;
  res.max_inverse = max_inv;
  // A sign change dominates: the windowed sum need not converge.
  if (prev.singular) res.flag = ReciprocalIntegral::Flag::singular;
  else if (res.flag == ReciprocalIntegral::Flag::ok && fold) res.flag = ReciprocalIntegral::Flag::pv;
  if (!std::isfinite(res.value)) {
    throw NumericalError("gap", "denominator.non_finite", "reciprocal integral is not finite");
  }
  return res;
}

// ---------------------------------------------------------------------------

void GapScanConfig::validate() const {
  if (g_list.empty()) throw DomainError("gap", "config.g_list", "g_list must not be empty");
  for (double g : g_list)
    if (!(g > 0.0 && g < 1.0)) throw DomainError("gap", "config.g_list", "every g must lie in (0, 1)");
  if (!(R_amp > 0.0)) throw DomainError("gap", "config.R_amp", "R_amp must be > 0");
  if (k_max < 1) throw DomainError("gap", "config.k_max", "k_max must be >= 1");
  if (born_terms < 1) throw DomainError("gap", "config.born_terms", "born_terms must be >= 1");
  if (K != 3) throw DomainError("gap", "config.K", "only K = 3 is supported");
  for (const auto& p : sites) {
    if (p.x0 >= grid.sites() || p.y0 >= grid.sites()) {
      throw DomainError("gap", "config.sites", "site index outside the grid");
    }
    const auto cx = grid.coords(p.x0), cy = grid.coords(p.y0);
    for (int j = 0; j < 3; ++j) {
      const int off = ((cx[j] - cy[j]) % grid.N() + grid.N()) % grid.N();
      if (off % 2 == 0) {
        throw DomainError("gap", "config.sites",
                          "every component of x0 - y0 must be odd (even offsets make d_i G vanish at g = 0)");
      }
    }
  }
}

std::vector<SitePair> default_site_pairs(const Grid& grid) {
  const std::size_t y0 = grid.site(0, 0, 0);
  return {{grid.site(1, 1, 1), y0}, {grid.site(1, 1, -1), y0}, {grid.site(1, -1, 1), y0}, {grid.site(-1, 1, 1), y0}};
}

LatticeField gap_profile(const GapScanConfig& cfg) {
  RandomFieldSpec spec;
  spec.seed = cfg.profile_seed;
  spec.transverse = true;
  LatticeField A = generate_field(cfg.grid, cfg.K, spec);
  const double n = l2_norm(A);
  if (!(n > 0.0)) throw DomainError("gap", "profile.zero", "profile field vanishes");
  A *= 1.0 / n;
  return A;
}

namespace {

// Evaluates h_i(s) for i = 0..2 along the path for one (g, site, a).
class PathIntegrand {
 public:
  PathIntegrand(const GapScanConfig& cfg, double g, const SitePair& site, int a, const LatticeField& profile)
      : cfg_(cfg), sc_(g, cfg.K), site_(site), a_(a), profile_(profile), direction_(profile.grid(), cfg.K) {
    const int K = cfg.K;
    // tau^c_k = sum_d eps^{acd} A_hat^d_k(y0), unit norm.
    double nrm = 0.0;
    for (int c = 0; c < K; ++c)
      for (int k = 0; k < 3; ++k) {
        double t = 0.0;
        for (int d = 0; d < K; ++d) t += levi_civita(a, c, d) * profile.at(site.y0, d, k);
        tau_[static_cast<std::size_t>(c * 3 + k)] = t;
        nrm += t * t;
      }
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12)) {
      throw DomainError("gap", "denominator.degenerate_family", "characteristic direction vanishes at y0");
    }
    for (auto& t : tau_) t /= nrm;
    if (cfg.path == GapPath::component) {
      LatticeField bump(profile.grid(), K);
      for (int c = 0; c < K; ++c)
        for (int k = 0; k < 3; ++k) bump.at(site.y0, c, k) = tau_[static_cast<std::size_t>(c * 3 + k)];
      direction_ = transverse_project(bump);
      double nu = 0.0;
      for (int c = 0; c < K; ++c)
        for (int k = 0; k < 3; ++k) nu += tau_[static_cast<std::size_t>(c * 3 + k)] * direction_.at(site.y0, c, k);
      direction_ *= 1.0 / nu;
    }
  }

  std::array<double, 3> operator()(double s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    const int K = cfg_.K;
    LatticeField A = profile_;
    if (cfg_.path == GapPath::component) {
      A.axpy(s, direction_);
    } else {
      A *= s;
    }
    const FaddeevPopovOperator L(sc_, A);
    const GreensOperator G = GreensOperator::born(L, cfg_.born_terms);
    // dG[i](a, b) = d_i G^{ab}(x0, y0).
    std::array<Eigen::MatrixXd, 3> dG{Eigen::MatrixXd(K, K), Eigen::MatrixXd(K, K), Eigen::MatrixXd(K, K)};
    for (int b = 0; b < K; ++b) {
      ColorScalarField delta(A.grid(), K);
      delta.at(site_.y0, b) = 1.0 / A.grid().cell_volume();
      const ColorScalarField col = G.apply(delta);
      for (int i = 0; i < 3; ++i) {
        const ColorScalarField d = spectral_derivative(col, i);
        for (int r = 0; r < K; ++r) dG[static_cast<std::size_t>(i)](r, b) = d.at(site_.x0, r);
      }
    }
    std::array<double, 3> h{};
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int c = 0; c < K; ++c)
        for (int k = 0; k < 3; ++k) {
          double w = 0.0;
          for (int b = 0; b < K; ++b)
            for (int d = 0; d < K; ++d) {
              const int e = levi_civita(b, c, d);
              if (e == 0) continue;
              w += dG[static_cast<std::size_t>(i)](a_, b) * e * A.at(site_.y0, d, k);
            }
          acc += w * tau_[static_cast<std::size_t>(c * 3 + k)];
        }
      h[static_cast<std::size_t>(i)] = acc;
    }
    cache_.emplace(s, h);
    return h;
  }

 private:
  const GapScanConfig& cfg_;
  StructureConstants sc_;
  SitePair site_;
  int a_;
  const LatticeField& profile_;
  std::array<double, 9> tau_{};
  LatticeField direction_;
  std::map<double, std::array<double, 3>> cache_;
};

}  // namespace

ReciprocalIntegral denominator_integral(const GapScanConfig& cfg, double g, const SitePair& site, int i,
                                        int a, const LatticeField& profile) {
  if (!(g < 1.0)) throw DomainError("gap", "denominator.coupling", "Born series requires g < 1");
  if (i < 0 || i > 2 || a < 0 || a >= cfg.K) throw DomainError("gap", "denominator.index", "i or a out of range");
  PathIntegrand hfun(cfg, g, site, a, profile);
  return integrate_reciprocal([&](double s) { return hfun(s)[static_cast<std::size_t>(i)]; }, cfg.R_amp,
                              cfg.quadrature);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

GapScanResult gap_scan(const GapScanConfig& cfg_in) {
  GapScanConfig cfg = cfg_in;
  if (cfg.sites.empty()) cfg.sites = default_site_pairs(cfg.grid);
  cfg.validate();
  const LatticeField profile = gap_profile(cfg);
  const double h2 = cfg.grid.spacing() * cfg.grid.spacing();

  GapScanResult out;
  out.path = cfg.path == GapPath::component ? "component" : "amplitude";
  out.g_list = cfg.g_list;
  for (double g : cfg.g_list) {
    double eta = std::numeric_limits<double>::infinity();
    for (const auto& site : cfg.sites)
      for (int a = 0; a < cfg.K; ++a) {
        PathIntegrand hfun(cfg, g, site, a, profile);
        for (int i = 0; i < 3; ++i) {
          const ReciprocalIntegral I = integrate_reciprocal(
              [&](double s) { return hfun(s)[static_cast<std::size_t>(i)]; }, cfg.R_amp, cfg.quadrature);
          out.bound_echo = std::max(out.bound_echo, I.max_inverse / h2);
          for (int k = 1; k <= cfg.k_max; ++k) {
            GapRow row;
            row.g = g;
            row.x0 = site.x0;
            row.y0 = site.y0;
            row.i = i;
            row.a = a;
            row.k = k;
            row.I = I.value;
            row.lambda = I.value == 0.0 ? std::numeric_limits<double>::infinity()
                                        : 2.0 * std::numbers::pi * std::numbers::pi * g * g * k * k /
                                              (I.value * I.value);
            row.flag = I.flag;
            if (row.lambda > 0.0 && std::isfinite(row.lambda)) eta = std::min(eta, row.lambda);
            out.rows.push_back(row);
          }
        }
      }
    out.eta.push_back(std::isfinite(eta) ? eta : 0.0);
    out.fitted_C.push_back(std::isfinite(eta) ? std::sqrt(6.0 * cfg.K * g * g / eta) : 0.0);
  }
  std::vector<double> gs, es;
  for (std::size_t j = 0; j < out.eta.size(); ++j)
    if (out.eta[j] > 0.0) {
      gs.push_back(out.g_list[j]);
      es.push_back(out.eta[j]);
    }
  if (gs.size() >= 2) out.fitted_slope = loglog_slope(gs, es);
  return out;
}

}  // namespace ymc
