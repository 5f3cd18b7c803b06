// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

// ymc: command line runner. Exit status 0 on success, 1 when an in-run
// assertion fails, 2 on configuration or precondition errors, 3 on numerical
// failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "runner/commands.hpp"
#include "runner/config.hpp"
#include "ymc/error.hpp"

namespace {

using ymc::runner::ConfigError;
using ymc::runner::RunConfig;

// Command line values that override the config file when given.
struct Overrides {
  std::string config;
  std::uint64_t seed = 0;
  int N = 0;
  double L_box = 0.0;
  int K = 0;
  double g = 0.0;
  double amplitude = 0.0;
  std::string snapshot;
  std::vector<std::function<void(RunConfig&)>> apply;
};

template <class T>
CLI::Option* override_option(CLI::App* app, Overrides& ov, const std::string& name, T& storage,
                             std::function<void(RunConfig&, const T&)> set, const std::string& help) {
  CLI::Option* opt = app->add_option(name, storage, help);
  ov.apply.push_back([opt, &storage, set](RunConfig& c) {
    if (opt->count() > 0) set(c, storage);
  });
  return opt;
}

void add_common(CLI::App* app, Overrides& ov) {
  app->add_option("--config", ov.config, "INI config file (see docs/config.md)");
  override_option<std::uint64_t>(app, ov, "--seed", ov.seed, [](RunConfig& c, const std::uint64_t& v) { c.seed = v; },
                                 "seed of the random field generator");
  override_option<int>(app, ov, "--N", ov.N, [](RunConfig& c, const int& v) { c.N = v; }, "grid points per edge");
  override_option<double>(app, ov, "--L-box", ov.L_box, [](RunConfig& c, const double& v) { c.L_box = v; },
                          "box edge length");
  override_option<int>(app, ov, "--K", ov.K, [](RunConfig& c, const int& v) { c.K = v; }, "number of colors");
  override_option<double>(app, ov, "--g", ov.g, [](RunConfig& c, const double& v) { c.g = v; }, "coupling");
  override_option<double>(app, ov, "--amplitude", ov.amplitude,
                          [](RunConfig& c, const double& v) { c.field.amplitude = v; }, "random field amplitude");
}

void add_snapshot(CLI::App* app, Overrides& ov) {
  override_option<std::string>(app, ov, "--snapshot", ov.snapshot,
                               [](RunConfig& c, const std::string& v) {
                                 c.field.source = "snapshot";
                                 c.field.snapshot = v;
                               },
                               "input field snapshot");
}

// "snapshot path" or "random:<seed>".
void apply_init(RunConfig& c, const std::string& v) {
  const std::string prefix = "random:";
  if (v.rfind(prefix, 0) == 0) {
    c.field.source = "random";
    const std::string digits = v.substr(prefix.size());
    try {
      std::size_t used = 0;
      c.seed = std::stoull(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw ConfigError("cli", "evolve.init", "cannot parse seed in '" + v + "'");
    }
  } else {
    c.field.source = "snapshot";
    c.field.snapshot = v;
  }
}

bool parse_on_off(const std::string& v) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw ConfigError("cli", "evolve.coulomb", "expected on or off, got '" + v + "'");
}

int report(const std::exception& e, int code) {
  std::cerr << "ymc: error: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coulomb-gauge Yang-Mills lattice workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ymc 1.0.0");

  Overrides ov;
  std::string command;
  std::string generate_out;
  std::string init, coulomb, gradient, method;
  std::int64_t steps = 0;
  double dt = 0.0, fd_step = 0.0;
  std::string out, out_traj, out_final, g_list;
  int m = 0, n_terms = 0, probes = 0, d = 0, nmax = 0;
  std::uint64_t probe_seed = 0;
  bool principal_value = false;

  std::vector<std::function<void(RunConfig&)>> extra;
  auto opt = [&](CLI::App* sub, const std::string& name, auto& storage, auto set, const std::string& help) {
    CLI::Option* o = sub->add_option(name, storage, help);
    extra.push_back([o, &storage, set](RunConfig& c) {
      if (o->count() > 0) set(c, storage);
    });
  };

  CLI::App* evolve = app.add_subcommand("evolve", "integrate the Hamiltonian flow");
  add_common(evolve, ov);
  opt(evolve, "--init", init, [](RunConfig& c, const std::string& v) { apply_init(c, v); },
      "initial state: snapshot path or random:<seed>");
  opt(evolve, "--steps", steps, [](RunConfig& c, std::int64_t v) { c.evolve.steps = v; }, "leapfrog steps");
  opt(evolve, "--dt", dt, [](RunConfig& c, double v) { c.evolve.dt = v; }, "time step (0 = 0.01 * spacing)");
  opt(evolve, "--coulomb", coulomb, [](RunConfig& c, const std::string& v) { c.evolve.coulomb = parse_on_off(v); },
      "Coulomb term on|off");
  opt(evolve, "--gradient", gradient,
      [](RunConfig& c, const std::string& v) {
        if (v == "auto") c.evolve.gradient = ymc::GradientMethod::automatic;
        else if (v == "analytic") c.evolve.gradient = ymc::GradientMethod::analytic;
        else if (v == "fd") c.evolve.gradient = ymc::GradientMethod::finite_difference;
        else throw ConfigError("cli", "evolve.gradient", "expected auto|analytic|fd, got '" + v + "'");
      },
      "gradient method auto|analytic|fd");
  opt(evolve, "--fd-step", fd_step, [](RunConfig& c, double v) { c.evolve.fd_step = v; }, "relative FD step");
  opt(evolve, "--out-traj", out_traj, [](RunConfig& c, const std::string& v) { c.evolve.out_traj = v; },
      "trajectory CSV");
  opt(evolve, "--out-final", out_final, [](RunConfig& c, const std::string& v) { c.evolve.out_final = v; },
      "final state snapshot");

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of the Faddeev-Popov operator nearest zero");
  add_common(spectrum, ov);
  add_snapshot(spectrum, ov);
  opt(spectrum, "-m", m, [](RunConfig& c, int v) { c.spectrum.m = v; }, "number of eigenpairs");
  opt(spectrum, "--out", out, [](RunConfig& c, const std::string& v) { c.spectrum.out = v; }, "output CSV");

  CLI::App* greens = app.add_subcommand("greens", "modified Green's function defect and Born series report");
  add_common(greens, ov);
  add_snapshot(greens, ov);
  opt(greens, "--method", method,
      [](RunConfig& c, const std::string& v) {
        if (v == "born") c.greens.method = ymc::GreensMethod::born;
        else if (v == "pinv") c.greens.method = ymc::GreensMethod::pseudoinverse;
        else throw ConfigError("cli", "greens.method", "expected born|pinv, got '" + v + "'");
      },
      "born|pinv");
  opt(greens, "-n", n_terms, [](RunConfig& c, int v) { c.greens.n_terms = v; }, "Born terms");
  opt(greens, "--probe-seed", probe_seed, [](RunConfig& c, std::uint64_t v) { c.greens.probe_seed = v; },
      "seed of the random probes");
  opt(greens, "--probes", probes, [](RunConfig& c, int v) { c.greens.probes = v; }, "number of probes");
  opt(greens, "--out", out, [](RunConfig& c, const std::string& v) { c.greens.out = v; }, "output JSON");

  CLI::App* gap = app.add_subcommand("gap-scan", "generalized eigenvalue scan over the coupling");
  add_common(gap, ov);
  opt(gap, "--g-list", g_list, [](RunConfig& c, const std::string& v) { c.gap.scan.g_list = ymc::runner::parse_double_list(v); },
      "comma separated couplings");
  opt(gap, "--principal-value", principal_value,
      [](RunConfig& c, bool v) { c.gap.scan.quadrature.principal_value = v; }, "fold the integral about 0");
  opt(gap, "--out", out, [](RunConfig& c, const std::string& v) { c.gap.out = v; }, "output CSV");

  CLI::App* fock = app.add_subcommand("fock-check", "truncated Fock space identity suites");
  add_common(fock, ov);
  opt(fock, "--d", d, [](RunConfig& c, int v) { c.fock.d = v; }, "one-particle dimension");
  opt(fock, "--nmax", nmax, [](RunConfig& c, int v) { c.fock.nmax = v; }, "particle number truncation");
  opt(fock, "--out", out, [](RunConfig& c, const std::string& v) { c.fock.out = v; }, "output JSON");
  // fock-check --seed seeds the suites.
  extra.push_back([fock](RunConfig& c) {
    if (fock->get_option("--seed")->count() > 0) c.fock.seed = c.seed;
  });

  CLI::App* run = app.add_subcommand("run", "run the command declared in a config file");
  run->add_option("--config", ov.config, "INI config file")->required();

  CLI::App* generate = app.add_subcommand("generate", "write a seeded random field snapshot");
  add_common(generate, ov);
  generate->add_option("--out", generate_out, "output snapshot")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    const std::string declared = command == "run" || command == "generate" ? "" : command;
    RunConfig cfg;
    if (!ov.config.empty()) {
      cfg = ymc::runner::parse_config_file(ov.config, declared);
    } else {
      cfg.command = declared;
    }
    if (command == "run" && cfg.command.empty()) {
      throw ConfigError("cli", "run.command", "missing required key");
    }
    for (auto& f : ov.apply) f(cfg);
    for (auto& f : extra) f(cfg);
    if (command == "generate") cfg.command = "generate";
    if (command != "generate") ymc::runner::validate_config(cfg);

    const ymc::runner::CommandResult r =
        command == "generate" ? ymc::runner::run_generate(cfg, generate_out) : ymc::runner::run_command(cfg);
    ymc::runner::emit(r);
    if (!r.assertions_ok) {
      std::cerr << "ymc: assertion failed: " << r.message << "\n";
      return 1;
    }
    return 0;
  } catch (const ymc::NumericalError& e) {
    return report(e, 3);
  } catch (const ymc::Error& e) {
    return report(e, 2);
  } catch (const std::exception& e) {
    return report(e, 2);
  }
}
