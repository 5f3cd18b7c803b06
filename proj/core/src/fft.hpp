// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ymc::detail {

using cvec = std::vector<std::complex<double>>;

/// Unnormalized in-place 3D DFT of an n^3 array; sign -1 is forward.
void fft3(int n, std::complex<double>* data, int sign);

/// Forward transform of the strided real channel src[k * stride], k < n^3.
cvec forward_real(int n, const double* src, std::size_t stride);

/// Inverse transform (with 1/n^3) of spec, real part written to dst[k * stride].
/// spec is overwritten.
void inverse_to_real(int n, cvec& spec, double* dst, std::size_t stride);

/// Integer wavenumber of bin j on an n-point axis.
inline int kappa(int n, int j) { return j <= n / 2 ? j : j - n; }

}  // namespace ymc::detail
