// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ymc/lattice.hpp"

namespace ymc {

inline constexpr std::uint32_t kSnapshotVersion = 1;
/// Bytes in one record header.
inline constexpr std::size_t kSnapshotHeaderBytes = 41;

/// One field slice with its metadata. See docs/format.md.
struct SnapshotRecord {
  LatticeField field;
  double g = 0.0;
  double t = 0.0;
};

void write_snapshot(std::ostream& os, const SnapshotRecord& rec);
/// Reads one record; returns false at clean end of stream. Throws DomainError
/// on malformed input.
bool read_snapshot(std::istream& is, SnapshotRecord& rec);

void write_snapshot_file(const std::string& path, const std::vector<SnapshotRecord>& recs);
std::vector<SnapshotRecord> read_snapshot_file(const std::string& path);

}  // namespace ymc
