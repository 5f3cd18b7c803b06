// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ymc::runner {

struct FockCheckOptions {
  int d = 3;
  int nmax = 5;
  std::uint64_t seed = 1;
};

/// Runs the CCR, Segal, Weyl, Gamma-covariance, dGamma-spectrum, W7 and
/// cyclicity suites. Each suite entry carries pass, max_deviation and tol;
/// the top-level all_pass is their conjunction.
nlohmann::ordered_json run_fock_check(const FockCheckOptions& opts);

}  // namespace ymc::runner
