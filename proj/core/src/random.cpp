// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "ymc/random.hpp"

#include <algorithm>
#include <cstdlib>

#include "fft.hpp"
#include "ymc/error.hpp"

namespace ymc {

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LatticeField band_limit(const LatticeField& f, int p_max) {
  LatticeField out = f;
  const int n = f.grid().N();
  const auto stride = static_cast<std::size_t>(f.K()) * 3;
  for (std::size_t c = 0; c < stride; ++c) {
    detail::cvec spec = detail::forward_real(n, out.data().data() + c, stride);
    std::size_t k = 0;
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int j3 = 0; j3 < n; ++j3, ++k) {
          const int m = std::max({std::abs(detail::kappa(n, j1)), std::abs(detail::kappa(n, j2)),
                                  std::abs(detail::kappa(n, j3))});
          if (m > p_max) spec[k] = 0.0;
        }
    detail::inverse_to_real(n, spec, out.data().data() + c, stride);
  }
  return out;
}

LatticeField generate_field(const Grid& grid, int K, const RandomFieldSpec& spec, FieldKind kind) {
  if (!(spec.amplitude >= 0.0)) {
    throw DomainError("cli", "random_field.amplitude", "amplitude must be >= 0");
  }
  if (spec.shape == SpectrumShape::band_limited && spec.p_max < 0) {
    throw DomainError("cli", "random_field.p_max", "p_max must be >= 0");
  }
  LatticeField f(grid, K, kind);
  if (spec.amplitude == 0.0) return f;
  SplitMix64 rng(spec.seed);
  for (auto& x : f.data()) x = rng.symmetric(spec.amplitude);
  if (spec.shape == SpectrumShape::band_limited) f = band_limit(f, spec.p_max);
  if (spec.transverse) {
    f = transverse_project(f);
    f.set_kind(kind);
  }
  return f;
}

ColorScalarField generate_scalar_field(const Grid& grid, int K, std::uint64_t seed, double amplitude) {
  ColorScalarField f(grid, K);
  SplitMix64 rng(seed);
  for (auto& x : f.data()) x = rng.symmetric(amplitude);
  return f;
}

}  // namespace ymc
