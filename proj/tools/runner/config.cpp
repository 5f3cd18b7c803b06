// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "runner/format.hpp"

namespace ymc::runner {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void bad(const std::string& key, const std::string& detail) {
  throw ConfigError("cli", "config." + key, detail);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    bad(key, "cannot parse '" + v + "' as a number");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  bad(key, "expected on/off, got '" + v + "'");
}

template <class E>
E parse_enum(const std::string& key, const std::string& raw, const std::map<std::string, E>& table) {
  const std::string v = trim(raw);
  auto it = table.find(v);
  if (it == table.end()) {
    std::string allowed;
    for (const auto& [k, _] : table) allowed += (allowed.empty() ? "" : "|") + k;
    bad(key, "expected one of " + allowed + ", got '" + v + "'");
  }
  return it->second;
}

const std::map<std::string, GreensMethod> kGreensMethods{{"born", GreensMethod::born},
                                                         {"pinv", GreensMethod::pseudoinverse}};

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;
using Schema = std::map<std::string, std::map<std::string, Setter>>;

// Site strings are resolved after [grid] is known.
struct Deferred {
  std::string sites;
};

Schema make_schema(Deferred& deferred) {
  Schema s;
  s["run"]["command"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.command = parse_enum<std::string>(k, v, {{"evolve", "evolve"}, {"spectrum", "spectrum"}, {"greens", "greens"},
                                               {"gap-scan", "gap-scan"}, {"fock-check", "fock-check"}});
  };
  s["run"]["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.seed = parse_number<std::uint64_t>(k, v);
  };
  s["grid"]["N"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.N = parse_number<int>(k, v); };
  s["grid"]["L_box"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.L_box = parse_number<double>(k, v);
  };
  s["algebra"]["K"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.K = parse_number<int>(k, v); };
  s["algebra"]["g"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.g = parse_number<double>(k, v); };

  s["field"]["init"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.field.source = parse_enum<std::string>(k, v, {{"random", "random"}, {"snapshot", "snapshot"}});
  };
  s["field"]["snapshot"] = [](RunConfig& c, const std::string&, const std::string& v) { c.field.snapshot = trim(v); };
  s["field"]["amplitude"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.field.amplitude = parse_number<double>(k, v);
  };
  s["field"]["shape"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.field.shape = parse_enum<SpectrumShape>(k, v, {{"white", SpectrumShape::white},
                                                     {"band_limited", SpectrumShape::band_limited}});
  };
  s["field"]["p_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.field.p_max = parse_number<int>(k, v);
  };
  s["field"]["born_radius"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.field.born_radius = parse_number<double>(k, v);
  };

  s["evolve"]["steps"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.steps = parse_number<std::int64_t>(k, v);
  };
  s["evolve"]["dt"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.dt = parse_number<double>(k, v);
  };
  s["evolve"]["coulomb"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.coulomb = parse_bool(k, v);
  };
  s["evolve"]["gradient"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.gradient = parse_enum<GradientMethod>(
        k, v, {{"auto", GradientMethod::automatic}, {"analytic", GradientMethod::analytic},
               {"fd", GradientMethod::finite_difference}});
  };
  s["evolve"]["fd_step"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.fd_step = parse_number<double>(k, v);
  };
  s["evolve"]["greens_method"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.greens_method = parse_enum(k, v, kGreensMethods);
  };
  s["evolve"]["born_terms"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.evolve.born_terms = parse_number<int>(k, v);
  };
  s["evolve"]["out_traj"] = [](RunConfig& c, const std::string&, const std::string& v) { c.evolve.out_traj = trim(v); };
  s["evolve"]["out_final"] = [](RunConfig& c, const std::string&, const std::string& v) {
    c.evolve.out_final = trim(v);
  };

  s["spectrum"]["m"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.spectrum.m = parse_number<int>(k, v);
  };
  s["spectrum"]["out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.spectrum.out = trim(v); };

  s["greens"]["method"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.greens.method = parse_enum(k, v, kGreensMethods);
  };
  s["greens"]["n_terms"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.greens.n_terms = parse_number<int>(k, v);
  };
  s["greens"]["probe_seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.greens.probe_seed = parse_number<std::uint64_t>(k, v);
  };
  s["greens"]["probes"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.greens.probes = parse_number<int>(k, v);
  };
  s["greens"]["out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.greens.out = trim(v); };

  s["gap"]["g_list"] = [](RunConfig& c, const std::string&, const std::string& v) {
    c.gap.scan.g_list = parse_double_list(v);
  };
  s["gap"]["R_amp"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.R_amp = parse_number<double>(k, v);
  };
  s["gap"]["profile_seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.profile_seed = parse_number<std::uint64_t>(k, v);
  };
  s["gap"]["sites"] = [&deferred](RunConfig&, const std::string&, const std::string& v) { deferred.sites = v; };
  s["gap"]["k_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.k_max = parse_number<int>(k, v);
  };
  s["gap"]["born_terms"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.born_terms = parse_number<int>(k, v);
  };
  s["gap"]["path"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.path = parse_enum<GapPath>(k, v, {{"component", GapPath::component}, {"amplitude", GapPath::amplitude}});
  };
  s["gap"]["principal_value"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.quadrature.principal_value = parse_bool(k, v);
  };
  s["gap"]["max_nodes"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.quadrature.max_nodes = parse_number<int>(k, v);
  };
  s["gap"]["rel_tol"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.gap.scan.quadrature.rel_tol = parse_number<double>(k, v);
  };
  s["gap"]["out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.gap.out = trim(v); };

  s["fock"]["d"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.fock.d = parse_number<int>(k, v); };
  s["fock"]["nmax"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.fock.nmax = parse_number<int>(k, v);
  };
  s["fock"]["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
    c.fock.seed = parse_number<std::uint64_t>(k, v);
  };
  s["fock"]["out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.fock.out = trim(v); };
  return s;
}

// Re-raises module precondition failures as schema violations.
template <class F>
void check(const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad(key, e.what());
  }
}

}  // namespace

void validate_config(RunConfig& c) {
  if (c.command.empty()) bad("run.command", "missing required key");
  check("grid", [&] { (void)c.grid(); });
  check("algebra", [&] { (void)StructureConstants(c.g, c.K); });
  if (c.field.source == "snapshot" && c.field.snapshot.empty()) bad("field.snapshot", "init = snapshot needs a path");
  if (!(c.field.amplitude >= 0.0)) bad("field.amplitude", "must be >= 0");
  if (c.field.p_max < 0) bad("field.p_max", "must be >= 0");
  if (!(c.field.born_radius >= 0.0)) bad("field.born_radius", "must be >= 0");
  if (c.evolve.steps < 0) bad("evolve.steps", "must be >= 0");
  check("evolve", [&] {
    HamiltonianConfig h;
    h.dt = c.evolve.dt;
    h.fd_step = c.evolve.fd_step;
    h.born_terms = c.evolve.born_terms;
    h.validate();
  });
  if (c.spectrum.m < 1) bad("spectrum.m", "must be >= 1");
  if (c.greens.n_terms < 0) bad("greens.n_terms", "must be >= 0");
  if (c.greens.probes < 1) bad("greens.probes", "must be >= 1");
  if (c.fock.d < 1) bad("fock.d", "must be >= 1");
  if (c.fock.nmax < 2) bad("fock.nmax", "must be >= 2");
  c.gap.scan.grid = c.grid();
  c.gap.scan.K = c.K;
  if (c.command == "gap-scan") {
    check("gap", [&] {
      GapScanConfig probe = c.gap.scan;
      if (probe.sites.empty()) probe.sites = default_site_pairs(probe.grid);
      probe.validate();
    });
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<double>("gap.g_list", item));
  if (out.empty()) bad("gap.g_list", "empty list");
  return out;
}

std::vector<SitePair> parse_sites(const std::string& text, const Grid& grid) {
  std::vector<SitePair> out;
  std::stringstream ss(text);
  std::string pair;
  auto point = [&](const std::string& p) {
    std::stringstream ps(p);
    std::string c;
    int xyz[3];
    int n = 0;
    while (std::getline(ps, c, ',')) {
      if (n == 3) bad("gap.sites", "a site has more than 3 coordinates");
      xyz[n++] = parse_number<int>("gap.sites", c);
    }
    if (n != 3) bad("gap.sites", "a site needs 3 coordinates");
    return grid.site(xyz[0], xyz[1], xyz[2]);
  };
  while (std::getline(ss, pair, ';')) {
    if (trim(pair).empty()) continue;
    const auto colon = pair.find(':');
    if (colon == std::string::npos) bad("gap.sites", "expected x1,x2,x3:y1,y2,y3");
    out.push_back({point(pair.substr(0, colon)), point(pair.substr(colon + 1))});
  }
  if (out.empty()) bad("gap.sites", "no site pairs given");
  return out;
}

RunConfig parse_config_text(const std::string& text, const std::string& command) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    bad("syntax", std::string("line ") + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig cfg;
  Deferred deferred;
  const Schema schema = make_schema(deferred);
  for (const auto& [section, body] : tree) {
    if (body.empty()) bad(section, "top-level keys are not allowed; use [section] headers");
    auto sec = schema.find(section);
    if (sec == schema.end()) bad(section, "unknown section");
    for (const auto& [key, value] : body) {
      auto it = sec->second.find(key);
      if (it == sec->second.end()) bad(section + "." + key, "unknown key");
      it->second(cfg, section + "." + key, value.get_value<std::string>());
    }
  }
  if (!deferred.sites.empty()) {
    check("gap.sites", [&] { cfg.gap.scan.sites = parse_sites(deferred.sites, Grid(cfg.N, cfg.L_box)); });
  }
  if (cfg.command.empty()) {
    cfg.command = command;
  } else if (!command.empty() && cfg.command != command) {
    bad("run.command", "config declares '" + cfg.command + "' but '" + command + "' was requested");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::string& command) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    bad("path", e.what());
  }
  return parse_config_text(text, command);
}

}  // namespace ymc::runner
