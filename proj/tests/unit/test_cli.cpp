// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "runner/commands.hpp"
#include "runner/config.hpp"
#include "ymc/snapshot.hpp"

namespace ymc::runner {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ymc_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(YMC_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect_config_error(const std::string& text, const std::string& needle) {
  try {
    parse_config_text(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(Config, Defaults) {
  const RunConfig c = parse_config_text("[run]\ncommand = spectrum\n");
  EXPECT_EQ(c.command, "spectrum");
  EXPECT_EQ(c.N, 4);
  EXPECT_EQ(c.K, 3);
  EXPECT_EQ(c.spectrum.m, 6);
}

TEST(Config, Values) {
  const RunConfig c = parse_config_text(
      "[run]\ncommand = evolve\nseed = 9\n[grid]\nN = 6\n[algebra]\ng = 0.3\n"
      "[evolve]\nsteps = 5\ncoulomb = off\ngradient = fd\n");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.N, 6);
  EXPECT_DOUBLE_EQ(c.g, 0.3);
  EXPECT_EQ(c.evolve.steps, 5);
  EXPECT_FALSE(c.evolve.coulomb);
  EXPECT_EQ(c.evolve.gradient, GradientMethod::finite_difference);
}

TEST(Config, Errors) {
  expect_config_error("", "config.run.command");
  expect_config_error("[run]\ncommand = dance\n", "config.run.command");
  expect_config_error("[run]\ncommand = spectrum\n[bogus]\nx = 1\n", "bogus");
  expect_config_error("[run]\ncommand = spectrum\n[grid]\nM = 4\n", "config.grid.M");
  expect_config_error("[run]\ncommand = spectrum\n[grid]\nN = four\n", "config.grid.N");
  expect_config_error("[run]\ncommand = spectrum\n[grid]\nN = 1\n", "N");
  expect_config_error("[run]\ncommand = evolve\n[evolve]\ncoulomb = maybe\n", "config.evolve.coulomb");
  expect_config_error("[run]\ncommand = spectrum\n[spectrum]\nm = 0\n", "m");
  expect_config_error("[run]\ncommand = fock-check\n[fock]\nnmax = 1\n", "nmax");
  expect_config_error("[run]\ncommand = gap-scan\n[gap]\ng_list = 0.1, 1.5\n", "g");
  EXPECT_THROW(parse_config_text("[run]\ncommand = evolve\n", "spectrum"), ConfigError);
  EXPECT_EQ(parse_config_text("[grid]\nN = 4\n", "greens").command, "greens");
}

TEST(Config, Sites) {
  const Grid g(4);
  const auto s = parse_sites("1,1,1:0,0,0; -1,1,1:0,0,0", g);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].x0, g.site(1, 1, 1));
  EXPECT_EQ(s[0].y0, 0u);
  EXPECT_EQ(s[1].x0, g.site(3, 1, 1));
  EXPECT_THROW(parse_sites("1,1:0,0,0", g), ConfigError);
  EXPECT_THROW(parse_sites("1,1,1", g), ConfigError);
  const auto v = parse_double_list("0.1, 0.2,0.4");
  EXPECT_EQ(v, (std::vector<double>{0.1, 0.2, 0.4}));
  EXPECT_THROW(parse_double_list("0.1,x"), ConfigError);
}

TEST(Commands, GenerateRoundTrip) {
  RunConfig c = parse_config_text("[algebra]\ng = 0.25\n", "evolve");
  const fs::path out = scratch("gen.snap");
  emit(run_generate(c, out.string()));
  const auto recs = read_snapshot_file(out.string());
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].field.kind(), FieldKind::potential);
  EXPECT_EQ(recs[1].field.kind(), FieldKind::momentum);
  EXPECT_DOUBLE_EQ(recs[0].g, 0.25);

  c.field.source = "snapshot";
  c.field.snapshot = out.string();
  const PreparedField p = prepare_field(c);
  ASSERT_TRUE(p.E.has_value());
  EXPECT_EQ(p.A.data(), recs[0].field.data());
  EXPECT_EQ(p.E->data(), recs[1].field.data());
}

TEST(Commands, Deterministic) {
  const RunConfig c = parse_config_text("[greens]\nmethod = pinv\n", "greens");
  const CommandResult a = run_command(c), b = run_command(c);
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(a.artifacts[i].bytes, b.artifacts[i].bytes);
  EXPECT_TRUE(a.assertions_ok);
}

TEST(Binary, ExitCodes) {
  const fs::path empty = scratch("empty.ini");
  std::ofstream(empty) << "";
  EXPECT_EQ(run_binary("run --config " + empty.string()), 2);
  EXPECT_EQ(run_binary("spectrum --N 1"), 2);
  EXPECT_EQ(run_binary("no-such-command"), 2);
  EXPECT_EQ(run_binary("spectrum --snapshot " + scratch("missing.snap").string()), 2);

  const fs::path json = scratch("fock.json");
  EXPECT_EQ(run_binary("fock-check --d 2 --nmax 3 --out " + json.string()), 0);
  EXPECT_NE(slurp(json).find("\"all_pass\": true"), std::string::npos);
}

TEST(Binary, EvolveArtifactsAreReproducible) {
  const fs::path t1 = scratch("t1.csv"), t2 = scratch("t2.csv");
  const fs::path f1 = scratch("f1.snap"), f2 = scratch("f2.snap");
  const std::string base = "evolve --coulomb off --steps 20 --g 0.2 --init random:3 ";
  ASSERT_EQ(run_binary(base + "--out-traj " + t1.string() + " --out-final " + f1.string()), 0);
  ASSERT_EQ(run_binary(base + "--out-traj " + t2.string() + " --out-final " + f2.string()), 0);
  EXPECT_EQ(slurp(t1), slurp(t2));
  EXPECT_EQ(slurp(f1), slurp(f2));
  EXPECT_EQ(slurp(t1).rfind("step,t,energy,gauge_residual,f_norm", 0), 0u);
}

}  // namespace
}  // namespace ymc::runner
