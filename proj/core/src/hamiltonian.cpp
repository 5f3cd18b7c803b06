// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "ymc/error.hpp"
#include "ymc/fields.hpp"

namespace ymc {
namespace {

bool coulomb_active(const HamiltonianConfig& cfg) {
  return cfg.coulomb_term_enabled && cfg.sc.g() != 0.0;
}

bool use_analytic(const HamiltonianConfig& cfg) {
  switch (cfg.gradient) {
    case GradientMethod::analytic:
      if (coulomb_active(cfg)) {
        throw DomainError("hamiltonian", "gradient.analytic",
                          "analytic gradient excludes the Coulomb term; disable it or set g = 0");
      }
      return true;
    case GradientMethod::finite_difference:
      return false;
    case GradientMethod::automatic:
    default:
      return !coulomb_active(cfg);
  }
}

void require_pair(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E) {
  if (!(A.grid() == E.grid()) || A.K() != E.K() || A.K() != cfg.sc.K()) {
    throw DomainError("hamiltonian", "state.shape", "A, E and algebra shapes differ");
  }
}

double sum_sq(const LatticeField& f) {
  double s = 0.0;
  for (double x : f.data()) s += x * x;
  return s;
}

}  // namespace

void HamiltonianConfig::validate() const {
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw DomainError("hamiltonian", "config.fd_step", "fd_step must be finite and > 0");
  }
  if (!std::isfinite(dt) || dt < 0.0) {
    throw DomainError("hamiltonian", "config.dt", "dt must be finite and > 0 (0 selects the default)");
  }
  if (born_terms < 0) throw DomainError("hamiltonian", "config.born_terms", "born_terms must be >= 0");
}

CoulombFields solve_f_and_A0(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E) {
  require_pair(cfg, A, E);
  CoulombFields out{charge_density(cfg.sc, A, E), ColorScalarField(A.grid(), A.K()),
                    ColorScalarField(A.grid(), A.K())};
  if (cfg.sc.g() == 0.0) return out;
  const FaddeevPopovOperator L(cfg.sc, A);
  const GreensOperator G = cfg.greens_method == GreensMethod::born
                               ? GreensOperator::born(L, cfg.born_terms)
                               : GreensOperator::pseudoinverse(L);
  out.f = G.apply(out.rho);
  out.f *= -cfg.sc.g();
  out.A0 = G.apply(laplacian(out.f));
  return out;
}

double energy(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E) {
  require_pair(cfg, A, E);
  const double h3 = A.grid().cell_volume();
  const LatticeField B = chromomagnetic(cfg.sc, A);
  double H = 0.5 * h3 * (sum_sq(E) + sum_sq(B));
  if (coulomb_active(cfg)) {
    const CoulombFields c = solve_f_and_A0(cfg, A, E);
    H += 0.5 * l2_inner(c.f, laplacian(c.f)) + l2_inner(c.rho, c.A0);
  }
  return H;
}

LatticeField magnetic_gradient(const StructureConstants& sc, const LatticeField& A) {
  const LatticeField B = chromomagnetic(sc, A);
  LatticeField grad = curl(B);
  grad *= 0.5;
  const int K = A.K();
  for (std::size_t s = 0; s < A.grid().sites(); ++s)
    for (int d = 0; d < K; ++d)
      for (int l = 0; l < 3; ++l) {
        double q = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) {
            const int e = levi_civita(i, l, k);
            if (e == 0) continue;
            for (int a = 0; a < K; ++a)
              for (int c = 0; c < K; ++c) q += e * sc(a, d, c) * B.at(s, a, i) * A.at(s, c, k);
          }
        grad.at(s, d, l) += 0.5 * q;
      }
  return transverse_project(grad);
}

namespace {

// Central differences of H along T(e_s) for every slot s of the varied field.
LatticeField fd_gradient(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E,
                         bool wrt_A) {
  const LatticeField& X = wrt_A ? A : E;
  const double h3 = X.grid().cell_volume();
  LatticeField grad(X.grid(), X.K(), FieldKind::auxiliary);
  LatticeField unit(X.grid(), X.K(), FieldKind::auxiliary);
  for (std::size_t s = 0; s < X.size(); ++s) {
    unit.data()[s] = 1.0;
    const LatticeField dir = transverse_project(unit);
    unit.data()[s] = 0.0;
    const double eps = cfg.fd_step * (1.0 + std::abs(X.data()[s]));
    LatticeField plus = X, minus = X;
    plus.axpy(eps, dir);
    minus.axpy(-eps, dir);
    const double hp = wrt_A ? energy(cfg, plus, E) : energy(cfg, A, plus);
    const double hm = wrt_A ? energy(cfg, minus, E) : energy(cfg, A, minus);
    const double d = (hp - hm) / (2.0 * eps);
    if (!std::isfinite(d)) {
      throw NumericalError("hamiltonian", "gradient.fd_probe",
                           "non-finite difference at slot " + std::to_string(s));
    }
    grad.data()[s] = d / h3;
  }
  return grad;
}

}  // namespace

LatticeField grad_A(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E) {
  require_pair(cfg, A, E);
  if (use_analytic(cfg)) return magnetic_gradient(cfg.sc, A);
  return fd_gradient(cfg, A, E, true);
}

LatticeField grad_E(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E) {
  require_pair(cfg, A, E);
  if (use_analytic(cfg)) {
    LatticeField g = transverse_project(E);
    g.set_kind(FieldKind::auxiliary);
    return g;
  }
  return fd_gradient(cfg, A, E, false);
}

Trajectory evolve(const HamiltonianConfig& cfg, const FlowState& initial, std::int64_t n_steps,
                  bool record_f_norm) {
  cfg.validate();
  require_pair(cfg, initial.A, initial.E);
  if (n_steps < 0) throw DomainError("hamiltonian", "evolve.steps", "n_steps must be >= 0");
  for (const LatticeField* f : {&initial.A, &initial.E}) {
    const double r = coulomb_residual(*f);
    if (!(r < kGaugeTol)) {
      std::ostringstream os;
      os << "initial state coulomb residual " << r << " >= " << kGaugeTol;
      throw GaugeError("hamiltonian", "evolve.transverse", os.str());
    }
  }
  const double dt = cfg.resolved_dt(initial.A.grid());
  const bool coulomb = coulomb_active(cfg);

  Trajectory traj;
  FlowState st = initial;
  auto record = [&](std::int64_t step) {
    TrajectoryRow row;
    row.step = step;
    row.t = st.t;
    row.energy = energy(cfg, st.A, st.E);
    if (!std::isfinite(row.energy)) {
      throw NumericalError("hamiltonian", "evolve.energy", "non-finite energy at step " + std::to_string(step));
    }
    st.energy = row.energy;
    row.gauge_residual = std::max(coulomb_residual(st.A), coulomb_residual(st.E));
    if (coulomb && record_f_norm) row.f_norm = l2_norm(solve_f_and_A0(cfg, st.A, st.E).f);
    traj.rows.push_back(row);
  };

  record(0);
  LatticeField gA = grad_A(cfg, st.A, st.E);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    LatticeField Eh = st.E;
    Eh.axpy(-0.5 * dt, gA);
    Eh = transverse_project(Eh);
    LatticeField An = st.A;
    An.axpy(dt, grad_E(cfg, st.A, Eh));
    st.A = transverse_project(An);
    gA = grad_A(cfg, st.A, Eh);
    Eh.axpy(-0.5 * dt, gA);
    st.E = transverse_project(Eh);
    st.E.set_kind(FieldKind::momentum);
    st.A.set_kind(FieldKind::potential);
    st.t = initial.t + static_cast<double>(n) * dt;
    record(n);
    if (coulomb) gA = grad_A(cfg, st.A, st.E);
  }
  traj.final = st;
  return traj;
}

double energy_drift(const std::vector<TrajectoryRow>& rows) {
  if (rows.size() < 2) return 0.0;
  const double n = static_cast<double>(rows.size());
  double st = 0, se = 0, stt = 0, ste = 0;
  for (const auto& r : rows) {
    st += r.t;
    se += r.energy;
    stt += r.t * r.t;
    ste += r.t * r.energy;
  }
  const double slope = (n * ste - st * se) / (n * stt - st * st);
  const double span = rows.back().t - rows.front().t;
  const double e0 = std::abs(rows.front().energy);
  return e0 == 0.0 ? std::abs(slope) * span : std::abs(slope) * span / e0;
}

double energy_fluctuation(const std::vector<TrajectoryRow>& rows) {
  if (rows.empty()) return 0.0;
  const double e0 = rows.front().energy;
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.energy - e0));
  return e0 == 0.0 ? worst : worst / std::abs(e0);
}

}  // namespace ymc
