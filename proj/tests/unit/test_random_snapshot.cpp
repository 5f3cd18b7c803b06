// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "ymc/error.hpp"
#include "ymc/random.hpp"
#include "ymc/snapshot.hpp"

namespace ymc {
namespace {

TEST(SplitMix64, ReferenceStream) {
  // Reference outputs of SplitMix64 started from state 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
  EXPECT_EQ(rng.counter(), 3u);
}

TEST(SplitMix64, UniformRange) {
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  SplitMix64 a(5), b(5);
  const std::uint64_t z = a.next();
  EXPECT_DOUBLE_EQ(b.uniform(), static_cast<double>(z >> 11) * 0x1.0p-53);
}

TEST(GenerateField, Deterministic) {
  const Grid g(6);
  RandomFieldSpec spec;
  spec.seed = 17;
  const LatticeField a = generate_field(g, 3, spec);
  const LatticeField b = generate_field(g, 3, spec);
  EXPECT_EQ(std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(double)), 0);
  spec.seed = 18;
  EXPECT_NE(generate_field(g, 3, spec).data(), a.data());
}

TEST(GenerateField, TransverseAndZeroAmplitude) {
  const Grid g(8);
  RandomFieldSpec spec;
  spec.seed = 3;
  EXPECT_LT(coulomb_residual(generate_field(g, 3, spec)), 1e-10);
  spec.amplitude = 0.0;
  const auto out = generate_field(g, 3, spec);
  for (double x : out.data()) EXPECT_EQ(x, 0.0);
}

TEST(GenerateField, RawEntriesFollowStream) {
  // White, untransformed fields are the stream itself in storage order.
  const Grid g(4);
  RandomFieldSpec spec;
  spec.seed = 9;
  spec.amplitude = 0.5;
  spec.transverse = false;
  const LatticeField f = generate_field(g, 3, spec);
  SplitMix64 rng(9);
  for (double x : f.data()) EXPECT_EQ(x, rng.symmetric(0.5));
}

TEST(BandLimit, RemovesHighModes) {
  const Grid g(8);
  LatticeField f(g, 1);
  for (std::size_t s = 0; s < g.sites(); ++s) {
    f.at(s, 0, 0) = std::sin(g.position(s, 1)) + std::sin(3 * g.position(s, 2));
  }
  const LatticeField b = band_limit(f, 2);
  for (std::size_t s = 0; s < g.sites(); ++s) EXPECT_NEAR(b.at(s, 0, 0), std::sin(g.position(s, 1)), 1e-12);
}

TEST(Snapshot, RoundTripBytes) {
  const Grid g(4, 2.5);
  RandomFieldSpec spec;
  spec.seed = 4;
  LatticeField E = generate_field(g, 3, spec, FieldKind::momentum);
  const SnapshotRecord rec{E, 0.3, 1.25};
  std::ostringstream os(std::ios::binary);
  write_snapshot(os, rec);
  const std::string bytes = os.str();
  ASSERT_EQ(bytes.size(), kSnapshotHeaderBytes + E.size() * 8);

  // Header oracle: fields at fixed offsets, little endian.
  EXPECT_EQ(bytes.substr(0, 4), "YMC1");
  auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes[off + static_cast<std::size_t>(b)]);
    return v;
  };
  auto f64 = [&](std::size_t off) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes[off + static_cast<std::size_t>(b)]);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  };
  EXPECT_EQ(u32(4), 1u);
  EXPECT_EQ(u32(8), 4u);
  EXPECT_EQ(u32(12), 3u);
  EXPECT_EQ(f64(16), 2.5);
  EXPECT_EQ(f64(24), 0.3);
  EXPECT_EQ(f64(32), 1.25);
  EXPECT_EQ(static_cast<int>(bytes[40]), 1);
  EXPECT_EQ(f64(41), E.data()[0]);
  EXPECT_EQ(f64(41 + 8 * (E.size() - 1)), E.data().back());

  std::istringstream is(bytes, std::ios::binary);
  SnapshotRecord back{LatticeField(Grid()), 0, 0};
  ASSERT_TRUE(read_snapshot(is, back));
  EXPECT_EQ(back.field.data(), E.data());
  EXPECT_EQ(back.field.kind(), FieldKind::momentum);
  EXPECT_EQ(back.field.grid(), g);
  EXPECT_EQ(back.g, 0.3);
  EXPECT_EQ(back.t, 1.25);
  EXPECT_FALSE(read_snapshot(is, back));
}

TEST(Snapshot, Malformed) {
  SnapshotRecord rec{LatticeField(Grid()), 0, 0};
  {
    std::istringstream is(std::string("YMC2") + std::string(60, '\0'));
    EXPECT_THROW(read_snapshot(is, rec), DomainError);
  }
  {
    std::ostringstream os(std::ios::binary);
    write_snapshot(os, {LatticeField(Grid(4), 3), 0, 0});
    std::string s = os.str();
    s.resize(s.size() - 3);
    std::istringstream is(s);
    EXPECT_THROW(read_snapshot(is, rec), DomainError);
  }
  EXPECT_THROW(read_snapshot_file("/nonexistent/file.snap"), DomainError);
}

TEST(Snapshot, FileWithSeveralRecords) {
  const std::string path = ::testing::TempDir() + "ymc_snapshot_test.bin";
  RandomFieldSpec spec;
  spec.seed = 1;
  const LatticeField A = generate_field(Grid(4), 3, spec);
  spec.seed = 2;
  const LatticeField E = generate_field(Grid(4), 3, spec, FieldKind::momentum);
  write_snapshot_file(path, {{A, 0.1, 0.0}, {E, 0.1, 0.0}});
  const auto recs = read_snapshot_file(path);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].field.data(), A.data());
  EXPECT_EQ(recs[1].field.data(), E.data());
  EXPECT_EQ(recs[1].field.kind(), FieldKind::momentum);
}

}  // namespace
}  // namespace ymc
