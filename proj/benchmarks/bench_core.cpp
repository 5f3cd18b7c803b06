// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "ymc/faddeev_popov.hpp"
#include "ymc/fock.hpp"
#include "ymc/greens.hpp"
#include "ymc/hamiltonian.hpp"
#include "ymc/random.hpp"

namespace {

ymc::LatticeField field(int N, std::uint64_t seed) {
  ymc::RandomFieldSpec spec;
  spec.seed = seed;
  spec.amplitude = 0.5;
  return ymc::generate_field(ymc::Grid(N), 3, spec);
}

void BM_TransverseProject(benchmark::State& state) {
  const ymc::LatticeField A = field(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ymc::transverse_project(A));
}
BENCHMARK(BM_TransverseProject)->Arg(4)->Arg(8)->Arg(16);

void BM_FaddeevPopovApply(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const ymc::FaddeevPopovOperator L(ymc::StructureConstants(0.3), field(N, 1));
  const ymc::ColorScalarField f = ymc::generate_scalar_field(ymc::Grid(N), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(L.apply(f));
}
BENCHMARK(BM_FaddeevPopovApply)->Arg(4)->Arg(8)->Arg(16);

void BM_BornApply(benchmark::State& state) {
  const ymc::FaddeevPopovOperator L(ymc::StructureConstants(0.3), ymc::normalize_for_born(field(4, 1)));
  const ymc::ColorScalarField f = ymc::generate_scalar_field(ymc::Grid(4), 3, 2);
  ymc::BornOptions opts;
  opts.report = false;
  for (auto _ : state) benchmark::DoNotOptimize(ymc::born_apply(L, f, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_BornApply)->Arg(6)->Arg(12);

void BM_LowSpectrum(benchmark::State& state) {
  const ymc::FaddeevPopovOperator L(ymc::StructureConstants(0.3), field(4, 1));
  for (auto _ : state) benchmark::DoNotOptimize(ymc::low_spectrum(L, 6));
}
BENCHMARK(BM_LowSpectrum)->Unit(benchmark::kMillisecond);

void BM_LeapfrogStep(benchmark::State& state) {
  ymc::HamiltonianConfig cfg;
  cfg.sc = ymc::StructureConstants(0.2);
  cfg.coulomb_term_enabled = false;
  ymc::FlowState s;
  s.A = field(4, 1);
  ymc::RandomFieldSpec spec;
  spec.seed = 2;
  spec.amplitude = 0.5;
  s.E = ymc::generate_field(ymc::Grid(4), 3, spec, ymc::FieldKind::momentum);
  for (auto _ : state) benchmark::DoNotOptimize(ymc::evolve(cfg, s, 1, false));
}
BENCHMARK(BM_LeapfrogStep);

void BM_SegalField(benchmark::State& state) {
  const ymc::FockSpace F(static_cast<int>(state.range(0)), 5);
  Eigen::VectorXcd f = Eigen::VectorXcd::Constant(F.d(), ymc::cplx(0.3, 0.1));
  const ymc::FockVector v = ymc::FockVector::vacuum(F);
  ymc::FockVector w = ymc::segal_field(F, f, ymc::segal_field(F, f, v));
  for (auto _ : state) benchmark::DoNotOptimize(ymc::segal_field(F, f, w));
}
BENCHMARK(BM_SegalField)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
