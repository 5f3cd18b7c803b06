// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace ymc::detail {
namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  cvec scratch(static_cast<std::size_t>(n) * n * n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_3d(n, n, n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft3(int n, std::complex<double>* data, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(n, sign), p, p);
}

cvec forward_real(int n, const double* src, std::size_t stride) {
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  cvec out(total);
  for (std::size_t k = 0; k < total; ++k) out[k] = src[k * stride];
  fft3(n, out.data(), -1);
  return out;
}

void inverse_to_real(int n, cvec& spec, double* dst, std::size_t stride) {
  const std::size_t total = spec.size();
  fft3(n, spec.data(), +1);
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t k = 0; k < total; ++k) dst[k * stride] = spec[k].real() * scale;
}

}  // namespace ymc::detail
