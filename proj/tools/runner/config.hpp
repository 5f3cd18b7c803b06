// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ymc/error.hpp"
#include "ymc/gap.hpp"
#include "ymc/greens.hpp"
#include "ymc/hamiltonian.hpp"
#include "ymc/random.hpp"

namespace ymc::runner {

/// Schema violation in a config file or command line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct FieldInit {
  /// "random" or "snapshot".
  std::string source = "random";
  std::string snapshot;
  double amplitude = 0.5;
  SpectrumShape shape = SpectrumShape::white;
  int p_max = 1;
  /// Rescale A so that born_spectral_radius(A) equals this value (0 = off).
  double born_radius = 0.0;
};

struct EvolveSection {
  std::int64_t steps = 100;
  double dt = 0.0;
  bool coulomb = true;
  GradientMethod gradient = GradientMethod::automatic;
  double fd_step = 1e-5;
  GreensMethod greens_method = GreensMethod::born;
  int born_terms = 12;
  std::string out_traj;
  std::string out_final;
};

struct SpectrumSection {
  int m = 6;
  std::string out;
};

struct GreensSection {
  GreensMethod method = GreensMethod::born;
  int n_terms = 6;
  std::uint64_t probe_seed = 1;
  int probes = 3;
  std::string out;
};

struct GapSection {
  GapScanConfig scan;
  std::string out;
};

struct FockSection {
  int d = 3;
  int nmax = 5;
  std::uint64_t seed = 1;
  std::string out;
};

/// Parsed and validated configuration. See docs/config.md for the grammar.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  int N = 4;
  double L_box = 6.283185307179586;
  int K = 3;
  double g = 0.2;
  FieldInit field;
  EvolveSection evolve;
  SpectrumSection spectrum;
  GreensSection greens;
  GapSection gap;
  FockSection fock;

  Grid grid() const { return Grid(N, L_box); }
};

/// Parses INI text. Unknown sections or keys, malformed values and failed
/// module preconditions throw ConfigError naming section.key. When the text
/// has no [run] command, `command` is used; a conflicting command is an error.
RunConfig parse_config_text(const std::string& text, const std::string& command = "");
RunConfig parse_config_file(const std::string& path, const std::string& command = "");

/// Checks every module precondition reachable from the config; called by the
/// parsers and again after command-line overrides.
void validate_config(RunConfig& cfg);

/// Parses "x1,x2,x3:y1,y2,y3;..." into site pairs on the grid.
std::vector<SitePair> parse_sites(const std::string& text, const Grid& grid);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace ymc::runner
