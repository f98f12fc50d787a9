// Copyright 2026 The channel-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "channelforge/channel.hpp"
#include "channelforge/circuit.hpp"
#include "channelforge/dilation.hpp"
#include "channelforge/experiments.hpp"
#include "channelforge/netsim.hpp"
#include "channelforge/noise.hpp"
#include "channelforge/noise_model.hpp"
#include "channelforge/tailor.hpp"

using namespace channelforge;

namespace {

KrausSet random_kraus(int dim, int rank, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(dim * rank, rng);
  KrausSet ks;
  for (int i = 0; i < rank; ++i) ks.operators.push_back(u.block(i * dim, 0, dim, dim));
  return ks;
}

void BM_KrausToChoi(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int d = static_cast<int>(state.range(0));
  const KrausSet ks = random_kraus(d, d * d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kraus_to_choi(ks));
}
BENCHMARK(BM_KrausToChoi)->Arg(2)->Arg(4)->Arg(8);

void BM_ChoiFidelity(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int d = static_cast<int>(state.range(0));
  const Channel a = Channel::from_kraus(random_kraus(d, d, rng));
  const Channel b = Channel::from_kraus(random_kraus(d, d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(choi_fidelity(a, b));
}
BENCHMARK(BM_ChoiFidelity)->Arg(2)->Arg(4);

void BM_FidelityEvaluator(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const FidelityEvaluator f(amplitude_damping(0.3).choi());
  const Channel b = Channel::from_kraus(random_kraus(2, 3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(f(b.choi()));
}
BENCHMARK(BM_FidelityEvaluator);

void BM_StinespringDilate(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const int d = static_cast<int>(state.range(0));
  const KrausSet ks = random_kraus(d, d * d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(stinespring_dilate(ks));
}
BENCHMARK(BM_StinespringDilate)->Arg(2)->Arg(4);

void BM_QuditRoutine(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int d = static_cast<int>(state.range(0));
  const KrausSet ks = random_kraus(d, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(extended_qudit_routine(ks));
}
BENCHMARK(BM_QuditRoutine)->Arg(2)->Arg(4);

void BM_ExtractNoisyAdCircuit(benchmark::State& state) {
  const NoiseModel nm = NoiseModel::gate_model(compose(dephasing(0.925), depolarizing(0.925)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_channel(apply_noise_model(build_ad_circuit(1.1), nm)));
  }
}
BENCHMARK(BM_ExtractNoisyAdCircuit);

void BM_BitflipFidelityB(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bitflip_fidelity_b(0.8, 0.3, 0.9));
}
BENCHMARK(BM_BitflipFidelityB);

void BM_PauliTailor(benchmark::State& state) {
  const PauliDiagonalSpec dep = PauliDiagonalSpec::depolarizing(0.925);
  const PauliDiagonalSpec target{{0.85, 0.05, 0.05, 0.05}};
  for (auto _ : state) benchmark::DoNotOptimize(pauli_tailor(dep, dep, target));
}
BENCHMARK(BM_PauliTailor);

void BM_ThetaTailor(benchmark::State& state) {
  const NoiseModel nm = NoiseModel::gate_model(compose(dephasing(0.925), depolarizing(0.925)));
  const Channel target = amplitude_damping(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_tailor(target, [](double t) { return build_ad_circuit(t); }, nm));
  }
}
BENCHMARK(BM_ThetaTailor)->Unit(benchmark::kMillisecond);

void BM_BuildingBlockInterleaved(benchmark::State& state) {
  BuildingBlockConfig cfg;
  cfg.search.restarts = 1;
  cfg.search.local.max_evaluations = static_cast<int>(state.range(0));
  const NoiseModel hw = NoiseModel::block_model(rotation_noise_b(0.9));
  const Channel input = compose(rotation_noise_b(0.9), bit_flip(0.95));
  for (auto _ : state) benchmark::DoNotOptimize(building_block_optimize(bit_flip(0.95), input, hw, cfg));
}
BENCHMARK(BM_BuildingBlockInterleaved)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TeleportScenario(benchmark::State& state) {
  NetworkScenario s;
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  ComplexVector psi(2);
  psi << 0.6, Complex(0.0, 0.8);
  s.events.push_back({0, AddRegistersEvent{{"q"}, {2}, ComplexMatrix(psi)}});
  s.events.push_back({0, AddRegistersEvent{{"a", "b"}, {2, 2}, ComplexMatrix(bell)}});
  s.events.push_back({1, ChannelEvent{"link", depolarizing(0.85), {"b"}, std::nullopt}});
  s.events.push_back({2, GateEvent{"cnot", {}, std::nullopt, {"q", "a"}, std::nullopt}});
  s.events.push_back({3, GateEvent{"h", {}, std::nullopt, {"q"}, std::nullopt}});
  s.events.push_back({4, MeasureEvent{"q", "m1"}});
  s.events.push_back({4, MeasureEvent{"a", "m2"}});
  s.events.push_back({5, GateEvent{"x", {}, std::nullopt, {"b"}, MessageCondition{"m2", 1}}});
  s.events.push_back({6, GateEvent{"z", {}, std::nullopt, {"b"}, MessageCondition{"m1", 1}}});
  s.fidelities.push_back({"teleported", {"b"}, ComplexMatrix(psi)});
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK(BM_TeleportScenario);

}  // namespace
BENCHMARK_MAIN();
