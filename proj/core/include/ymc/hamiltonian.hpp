// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ymc/algebra.hpp"
#include "ymc/greens.hpp"
#include "ymc/lattice.hpp"

namespace ymc {

enum class GradientMethod {
  /// analytic when the Coulomb term vanishes (disabled, or g = 0), else FD.
  automatic,
  /// Gradient of 1/2 int (E^2 + B^2); rejected when the Coulomb term is active.
  analytic,
  finite_difference,
};

struct HamiltonianConfig {
  StructureConstants sc{0.0};
  GreensMethod greens_method = GreensMethod::born;
  int born_terms = 12;
  GradientMethod gradient = GradientMethod::automatic;
  double fd_step = 1e-5;
  /// Time step; <= 0 selects 0.01 * spacing.
  double dt = 0.0;
  bool coulomb_term_enabled = true;

  double resolved_dt(const Grid& grid) const { return dt > 0.0 ? dt : 0.01 * grid.spacing(); }
  /// Throws DomainError on invalid settings.
  void validate() const;
};

struct FlowState {
  double t = 0.0;
  LatticeField A{Grid()};
  LatticeField E{Grid(), 3, FieldKind::momentum};
  double energy = 0.0;
};

struct CoulombFields {
  ColorScalarField rho;
  ColorScalarField f;
  ColorScalarField A0;
};

/// rho = g eps E A, f = -g G rho, A0 = G Delta f with G the modified Green's
/// function of L(A) selected by cfg.greens_method.
CoulombFields solve_f_and_A0(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E);

/// H = 1/2 int (E^2 + B^2) [+ 1/2 int f Delta f + int rho A0], lattice quadrature.
double energy(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E);

/// Transversally projected functional gradients divided by spacing^3.
LatticeField grad_A(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E);
LatticeField grad_E(const HamiltonianConfig& cfg, const LatticeField& A, const LatticeField& E);

/// Gradient of the magnetic part 1/2 int B^2 (before projection is applied
/// by grad_A): 1/2 curl B + g/2 eps_ijl eps^abe B^a_i A^b_j, projected.
LatticeField magnetic_gradient(const StructureConstants& sc, const LatticeField& A);

struct TrajectoryRow {
  std::int64_t step = 0;
  double t = 0.0;
  double energy = 0.0;
  double gauge_residual = 0.0;
  double f_norm = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  FlowState final;
};

/// Projected kick-drift-kick leapfrog; rows[0] is the initial state. Throws
/// GaugeError if the initial A or E is not transverse and NumericalError
/// (naming the step) if the energy becomes non-finite.
Trajectory evolve(const HamiltonianConfig& cfg, const FlowState& initial, std::int64_t n_steps,
                  bool record_f_norm = true);

/// |least-squares slope of energy vs t| * T / |E(0)| over the rows.
double energy_drift(const std::vector<TrajectoryRow>& rows);
/// max |E(t) - E(0)| / |E(0)|.
double energy_fluctuation(const std::vector<TrajectoryRow>& rows);

}  // namespace ymc
