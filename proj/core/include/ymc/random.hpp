// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ymc/lattice.hpp"

namespace ymc {

/// Counter-based SplitMix64 stream.
///
/// The k-th output (k = 0, 1, ...) of a stream with seed s is
/// mix(s + (k + 1) * 0x9E3779B97F4A7C15) where mix is the SplitMix64
/// finalizer. uniform() maps an output z to (z >> 11) * 2^-53 in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t next() noexcept { return mix(seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// amplitude * (2u - 1), u = uniform().
  double symmetric(double amplitude) noexcept { return amplitude * (2.0 * uniform() - 1.0); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

enum class SpectrumShape { white, band_limited };

struct RandomFieldSpec {
  std::uint64_t seed = 0;
  SpectrumShape shape = SpectrumShape::white;
  /// Integer wavenumber cutoff: modes with max_j |kappa_j| > p_max are removed.
  int p_max = 1;
  double amplitude = 1.0;
  bool transverse = true;
};

/// Entries drawn in storage order as symmetric(amplitude), then optionally
/// band-limited and transversally projected. Identical inputs give identical
/// bytes.
LatticeField generate_field(const Grid& grid, int K, const RandomFieldSpec& spec,
                            FieldKind kind = FieldKind::potential);

/// Color scalar analogue of generate_field (no transversality).
ColorScalarField generate_scalar_field(const Grid& grid, int K, std::uint64_t seed,
                                       double amplitude = 1.0);

/// Removes Fourier modes with max_j |kappa_j| > p_max from every channel.
LatticeField band_limit(const LatticeField& f, int p_max);

}  // namespace ymc
