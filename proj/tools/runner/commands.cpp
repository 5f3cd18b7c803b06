// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "runner/fock_check.hpp"
#include "runner/format.hpp"
#include "ymc/error.hpp"
#include "ymc/faddeev_popov.hpp"
#include "ymc/gap.hpp"
#include "ymc/greens.hpp"
#include "ymc/hamiltonian.hpp"
#include "ymc/random.hpp"
#include "ymc/snapshot.hpp"

namespace ymc::runner {
namespace {

using Json = nlohmann::ordered_json;

// The momentum field of a random initial state uses the next seed.
constexpr std::uint64_t kMomentumSeedOffset = 1;

std::string snapshot_bytes(const std::vector<SnapshotRecord>& recs) {
  std::ostringstream os(std::ios::binary);
  for (const auto& r : recs) write_snapshot(os, r);
  return os.str();
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string greens_name(GreensMethod m) { return m == GreensMethod::born ? "born" : "pinv"; }

}  // namespace

PreparedField prepare_field(const RunConfig& cfg) {
  if (cfg.field.source == "snapshot") {
    auto recs = read_snapshot_file(cfg.field.snapshot);
    if (recs.front().field.kind() != FieldKind::potential) {
      throw DomainError("cli", "field.snapshot", "first record must be a potential");
    }
    if (recs.front().field.K() != cfg.K) {
      throw DomainError("cli", "field.snapshot", "snapshot K differs from [algebra] K");
    }
    PreparedField p{recs.front().field, std::nullopt, recs.front().g, recs.front().t};
    for (std::size_t r = 1; r < recs.size(); ++r) {
      if (recs[r].field.kind() == FieldKind::momentum) {
        if (!(recs[r].field.grid() == p.A.grid()) || recs[r].field.K() != p.A.K()) {
          throw DomainError("cli", "field.snapshot", "momentum record shape differs from the potential");
        }
        p.E = recs[r].field;
        break;
      }
    }
    return p;
  }
  const Grid grid = cfg.grid();
  RandomFieldSpec spec;
  spec.seed = cfg.seed;
  spec.shape = cfg.field.shape;
  spec.p_max = cfg.field.p_max;
  spec.amplitude = cfg.field.amplitude;
  LatticeField A = generate_field(grid, cfg.K, spec);
  if (cfg.field.born_radius > 0.0) {
    A = normalize_for_born(A);
    A *= cfg.field.born_radius;
  }
  spec.seed = cfg.seed + kMomentumSeedOffset;
  LatticeField E = generate_field(grid, cfg.K, spec, FieldKind::momentum);
  return PreparedField{std::move(A), std::move(E), cfg.g, 0.0};
}

CommandResult run_generate(const RunConfig& cfg, const std::string& out) {
  const PreparedField p = prepare_field(cfg);
  std::vector<SnapshotRecord> recs{{p.A, p.g, p.t}};
  if (p.E) recs.push_back({*p.E, p.g, p.t});
  CommandResult r;
  r.artifacts.push_back({"snapshot", out, snapshot_bytes(recs), true});
  return r;
}

CommandResult run_evolve(const RunConfig& cfg) {
  const PreparedField p = prepare_field(cfg);
  HamiltonianConfig h;
  h.sc = StructureConstants(p.g, p.A.K());
  h.greens_method = cfg.evolve.greens_method;
  h.born_terms = cfg.evolve.born_terms;
  h.gradient = cfg.evolve.gradient;
  h.fd_step = cfg.evolve.fd_step;
  h.dt = cfg.evolve.dt;
  h.coulomb_term_enabled = cfg.evolve.coulomb;

  FlowState init;
  init.t = p.t;
  init.A = p.A;
  init.E = p.E ? *p.E : LatticeField(p.A.grid(), p.A.K(), FieldKind::momentum);
  const Trajectory traj = evolve(h, init, cfg.evolve.steps);

  std::string csv = "step,t,energy,gauge_residual,f_norm\n";
  double worst_gauge = 0.0;
  for (const auto& row : traj.rows) {
    csv += std::to_string(row.step) + "," + format_double(row.t) + "," + format_double(row.energy) + "," +
           format_double(row.gauge_residual) + "," + format_double(row.f_norm) + "\n";
    worst_gauge = std::max(worst_gauge, row.gauge_residual);
  }
  CommandResult r;
  r.artifacts.push_back({"trajectory", cfg.evolve.out_traj, csv, false});
  FieldKind kind = traj.final.E.kind();
  LatticeField E = traj.final.E;
  if (kind != FieldKind::momentum) E.set_kind(FieldKind::momentum);
  r.artifacts.push_back({"final", cfg.evolve.out_final,
                         snapshot_bytes({{traj.final.A, p.g, traj.final.t}, {E, p.g, traj.final.t}}), true});
  if (!(worst_gauge < kGaugeTol)) {
    r.assertions_ok = false;
    r.message = "hamiltonian: evolve.gauge: gauge residual " + format_double(worst_gauge) + " >= " +
                format_double(kGaugeTol);
  }
  return r;
}

CommandResult run_spectrum(const RunConfig& cfg) {
  const PreparedField p = prepare_field(cfg);
  const FaddeevPopovOperator L(StructureConstants(p.g, p.A.K()), p.A);
  const SpectralSlice s = low_spectrum(L, cfg.spectrum.m);
  std::string csv = "index,eigenvalue,residual\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    csv += std::to_string(k) + "," + format_double(s.eigenvalues[k]) + "," + format_double(s.residuals[k]) + "\n";
  }
  CommandResult r;
  r.artifacts.push_back({"spectrum", cfg.spectrum.out, csv, false});
  return r;
}

CommandResult run_greens(const RunConfig& cfg) {
  const PreparedField p = prepare_field(cfg);
  const FaddeevPopovOperator L(StructureConstants(p.g, p.A.K()), p.A);
  const auto& gs = cfg.greens;

  Json j;
  j["method"] = greens_name(gs.method);
  j["g"] = p.g;
  j["n_terms"] = gs.n_terms;
  j["probe_seed"] = gs.probe_seed;
  j["probes"] = gs.probes;
  const double radius = born_spectral_radius(L);
  j["born_radius"] = radius;
  j["expected_ratio"] = p.g * radius;

  BornOptions opts;
  opts.probes = gs.probes;
  opts.probe_seed = gs.probe_seed;
  const ColorScalarField source = generate_scalar_field(L.grid(), L.K(), gs.probe_seed);
  const BornResult born = born_apply(L, source, gs.n_terms, opts);
  Json series;
  series["residuals"] = born.report.residuals;
  series["term_norms"] = born.report.term_norms;
  series["fitted_log_rate"] = born.report.fitted_log_rate;
  series["fitted_ratio"] = born.report.fitted_ratio;
  series["diverging"] = born.report.diverging;
  j["born_series"] = series;

  CommandResult r;
  if (gs.method == GreensMethod::born) {
    if (born.report.diverging) {
      throw NumericalError("greens", "born.diverging",
                           "series terms stop decreasing (g * radius = " + format_double(p.g * radius) + ")");
    }
    const GreensOperator G = GreensOperator::born(L, gs.n_terms);
    j["kernel_dim"] = G.kernel().size();
    j["defect"] = green_defect(G, gs.probes, gs.probe_seed);
  } else {
    const GreensOperator G = GreensOperator::pseudoinverse(L);
    j["kernel_dim"] = G.kernel().size();
    const double defect = green_defect(G, gs.probes, gs.probe_seed);
    j["defect"] = defect;
    if (!born.report.diverging) {
      const GreensOperator Gb = GreensOperator::born(L, gs.n_terms);
      double diff = 0.0;
      for (int q = 0; q < gs.probes; ++q) {
        const ColorScalarField probe = generate_scalar_field(L.grid(), L.K(), gs.probe_seed + static_cast<std::uint64_t>(q));
        diff = std::max(diff, l2_norm(Gb.apply(probe) - G.apply(probe)) / l2_norm(probe));
      }
      j["born_difference"] = diff;
    }
    if (!(defect < 1e-10)) {
      r.assertions_ok = false;
      r.message = "greens: pinv.defect: " + format_double(defect) + " >= 1e-10";
    }
  }
  r.artifacts.push_back({"greens", gs.out, json_text(j), false});
  return r;
}

CommandResult run_gap_scan(const RunConfig& cfg) {
  GapScanConfig sc = cfg.gap.scan;
  if (sc.sites.empty()) sc.sites = default_site_pairs(sc.grid);
  const GapScanResult res = gap_scan(sc);
  std::string csv;
  csv += "# path=" + res.path + "\n";
  csv += "# N=" + std::to_string(sc.grid.N()) + " K=" + std::to_string(sc.K) + " R_amp=" + format_double(sc.R_amp) +
         " profile_seed=" + std::to_string(sc.profile_seed) + " born_terms=" + std::to_string(sc.born_terms) + "\n";
  csv += "g,x0,y0,i,a,k,I,lambda,flags\n";
  for (const auto& row : res.rows) {
    csv += format_double(row.g) + "," + std::to_string(row.x0) + "," + std::to_string(row.y0) + "," +
           std::to_string(row.i) + "," + std::to_string(row.a) + "," + std::to_string(row.k) + "," +
           format_double(row.I) + "," + format_double(row.lambda) + "," + to_string(row.flag) + "\n";
  }
  bool positive = true;
  for (std::size_t j = 0; j < res.g_list.size(); ++j) {
    csv += "eta_per_g," + format_double(res.g_list[j]) + "," + format_double(res.eta[j]) + "\n";
    positive = positive && res.eta[j] > 0.0;
  }
  for (std::size_t j = 0; j < res.g_list.size(); ++j) {
    csv += "fitted_C," + format_double(res.g_list[j]) + "," + format_double(res.fitted_C[j]) + "\n";
  }
  csv += "bound_echo," + format_double(res.bound_echo) + "\n";
  csv += "fitted_slope," + format_double(res.fitted_slope) + "\n";
  CommandResult r;
  r.artifacts.push_back({"gap", cfg.gap.out, csv, false});
  if (!positive) {
    r.assertions_ok = false;
    r.message = "gap: scan.eta: some eta(g) is not positive";
  } else if (!std::isfinite(res.bound_echo)) {
    r.assertions_ok = false;
    r.message = "gap: scan.bound_echo: not finite";
  }
  return r;
}

CommandResult run_fock(const RunConfig& cfg) {
  const Json j = run_fock_check({cfg.fock.d, cfg.fock.nmax, cfg.fock.seed});
  CommandResult r;
  r.artifacts.push_back({"fock", cfg.fock.out, json_text(j), false});
  if (!j["all_pass"].get<bool>()) {
    r.assertions_ok = false;
    r.message = "fock: check.all_pass: at least one suite failed";
  }
  return r;
}

CommandResult run_command(const RunConfig& cfg) {
  if (cfg.command == "evolve") return run_evolve(cfg);
  if (cfg.command == "spectrum") return run_spectrum(cfg);
  if (cfg.command == "greens") return run_greens(cfg);
  if (cfg.command == "gap-scan") return run_gap_scan(cfg);
  if (cfg.command == "fock-check") return run_fock(cfg);
  throw ConfigError("cli", "run.command", "unknown command '" + cfg.command + "'");
}

void emit(const CommandResult& r) {
  for (const auto& a : r.artifacts) {
    if (!a.path.empty()) {
      write_text_file(a.path, a.bytes);
    } else if (!a.binary) {
      std::cout << a.bytes;
    }
  }
  std::cout.flush();
}

}  // namespace ymc::runner
