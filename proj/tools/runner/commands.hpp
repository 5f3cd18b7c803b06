// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "runner/config.hpp"
#include "ymc/lattice.hpp"

namespace ymc::runner {

/// One output of a command. Empty path means "print to stdout" for text
/// artifacts and "skip" for binary ones.
struct Artifact {
  std::string name;
  std::string path;
  std::string bytes;
  bool binary = false;
};

struct CommandResult {
  std::vector<Artifact> artifacts;
  /// False when an in-run assertion failed (exit status 1).
  bool assertions_ok = true;
  std::string message;
};

/// Initial potential, optional momentum and coupling, from a snapshot file or
/// the seeded generator. Snapshot records carry their own grid and g, which
/// take precedence over [grid] and [algebra].
struct PreparedField {
  LatticeField A;
  std::optional<LatticeField> E;
  double g = 0.0;
  double t = 0.0;
};
PreparedField prepare_field(const RunConfig& cfg);

CommandResult run_generate(const RunConfig& cfg, const std::string& out);
CommandResult run_evolve(const RunConfig& cfg);
CommandResult run_spectrum(const RunConfig& cfg);
CommandResult run_greens(const RunConfig& cfg);
CommandResult run_gap_scan(const RunConfig& cfg);
CommandResult run_fock(const RunConfig& cfg);
/// Dispatches on cfg.command.
CommandResult run_command(const RunConfig& cfg);

/// Writes every artifact with a path; prints text artifacts without one.
void emit(const CommandResult& r);

}  // namespace ymc::runner
