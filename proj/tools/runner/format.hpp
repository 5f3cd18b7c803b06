// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace ymc::runner {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Writes `content` to `path`, replacing the file. Throws ymc::Error on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ymc::runner
