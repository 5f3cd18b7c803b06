// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ymc/error.hpp"

namespace ymc {
namespace {

void put_u32(std::string& buf, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int b = bytes - 1; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_le(p, 8)); }

[[noreturn]] void malformed(const std::string& what) {
  throw DomainError("lattice", "snapshot.format", what);
}

}  // namespace

void write_snapshot(std::ostream& os, const SnapshotRecord& rec) {
  const LatticeField& f = rec.field;
  std::string buf;
  buf.reserve(kSnapshotHeaderBytes + f.size() * 8);
  buf.append("YMC1");
  put_u32(buf, kSnapshotVersion);
  put_u32(buf, static_cast<std::uint32_t>(f.grid().N()));
  put_u32(buf, static_cast<std::uint32_t>(f.K()));
  put_f64(buf, f.grid().L_box());
  put_f64(buf, rec.g);
  put_f64(buf, rec.t);
  buf.push_back(static_cast<char>(f.kind()));
  for (double x : f.data()) put_f64(buf, x);
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw Error("lattice", "snapshot.write", "stream write failed");
}

bool read_snapshot(std::istream& is, SnapshotRecord& rec) {
  unsigned char h[kSnapshotHeaderBytes];
  is.read(reinterpret_cast<char*>(h), 1);
  if (is.gcount() == 0) return false;
  is.read(reinterpret_cast<char*>(h) + 1, kSnapshotHeaderBytes - 1);
  if (static_cast<std::size_t>(is.gcount()) != kSnapshotHeaderBytes - 1) malformed("truncated header");
  if (std::memcmp(h, "YMC1", 4) != 0) malformed("bad magic");
  const auto version = static_cast<std::uint32_t>(get_le(h + 4, 4));
  if (version != kSnapshotVersion) malformed("unsupported version " + std::to_string(version));
  const auto N = static_cast<std::uint32_t>(get_le(h + 8, 4));
  const auto K = static_cast<std::uint32_t>(get_le(h + 12, 4));
  const double L = get_f64(h + 16);
  const double g = get_f64(h + 24);
  const double t = get_f64(h + 32);
  const unsigned kind = h[40];
  if (kind > 2) malformed("unknown kind " + std::to_string(kind));
  if (N > 1024 || K > 64 || K == 0) malformed("implausible dimensions");
  LatticeField f(Grid(static_cast<int>(N), L), static_cast<int>(K), static_cast<FieldKind>(kind));
  std::vector<unsigned char> body(f.size() * 8);
  is.read(reinterpret_cast<char*>(body.data()), static_cast<std::streamsize>(body.size()));
  if (static_cast<std::size_t>(is.gcount()) != body.size()) malformed("truncated payload");
  for (std::size_t k = 0; k < f.size(); ++k) f.data()[k] = get_f64(body.data() + 8 * k);
  rec = SnapshotRecord{std::move(f), g, t};
  return true;
}

void write_snapshot_file(const std::string& path, const std::vector<SnapshotRecord>& recs) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("lattice", "snapshot.open", "cannot open " + path + " for writing");
  for (const auto& r : recs) write_snapshot(os, r);
}

std::vector<SnapshotRecord> read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("lattice", "snapshot.open", "cannot open " + path);
  std::vector<SnapshotRecord> out;
  SnapshotRecord rec{LatticeField(Grid()), 0.0, 0.0};
  while (read_snapshot(is, rec)) out.push_back(rec);
  if (out.empty()) malformed("no records in " + path);
  return out;
}

}  // namespace ymc
