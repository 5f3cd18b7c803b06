// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ymc/error.hpp"

namespace ymc::runner {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cli", "output.open", "cannot open " + path + " for writing");
  os << content;
  if (!os) throw Error("cli", "output.write", "write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cli", "input.open", "cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace ymc::runner
