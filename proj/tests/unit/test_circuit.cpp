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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "channelforge/circuit.hpp"
#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"
#include "oracles.hpp"

using namespace channelforge;
using cftest::max_abs_diff;

TEST(Circuit, GatesAreUnitaryAndConventional) {
  for (const ComplexMatrix& g : {gate_x(), gate_y(), gate_z(), gate_h(), gate_ry(0.7), gate_cnot(),
                                 gate_cry(1.1), gate_shift(3)}) {
    EXPECT_TRUE(is_unitary(g, 1e-14));
  }
  // Control on the most significant qubit: |10> -> |11>.
  EXPECT_EQ(gate_cnot()(3, 2), Complex(1.0));
  EXPECT_NEAR(gate_ry(M_PI)(1, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(gate_shift(3)(0, 1), Complex(1.0));
  EXPECT_THROW(named_gate("toffoli", {}), ConfigError);
}

TEST(Circuit, NaiveFullMatrixOracle) {
  std::mt19937_64 rng(41);
  const std::vector<int> dims = {2, 3, 2};
  Circuit c({{"a", 2, WireRole::data}, {"b", 3, WireRole::data}, {"c", 2, WireRole::data}});
  ComplexMatrix total = ComplexMatrix::Identity(12, 12);
  const std::vector<std::vector<int>> layout = {{0}, {1, 2}, {2, 0}, {1}, {0, 1, 2}, {2, 1}};
  for (const auto& w : layout) {
    int d = 1;
    for (int i : w) d *= dims[i];
    const ComplexMatrix u = cftest::haar_unitary(d, rng);
    c.gate("u", u, w);
    total = cftest::embed(u, dims, w) * total;
  }
  const ComplexMatrix rho = cftest::random_state(12, 3, rng);
  EXPECT_LT(max_abs_diff(simulate(c, DensityMatrix(rho)).matrix(), total * rho * total.adjoint()), 1e-12);
}

TEST(Circuit, NoiselessBitflipCircuitsRealizeBitFlip) {
  for (double p : {0.0, 0.2, 0.5, 0.93, 1.0}) {
    const Channel target = bit_flip(p);
    EXPECT_LT(max_abs(extract_channel(build_bitflip_circuit_a(p)).channel.choi() - target.choi()), 1e-12);
    EXPECT_LT(max_abs(extract_channel(build_bitflip_circuit_b(p)).channel.choi() - target.choi()), 1e-12);
  }
}

TEST(Circuit, NoiselessAdCircuitRealizesAmplitudeDamping) {
  for (double g : {0.0, 0.1, 0.33, 0.8, 1.0}) {
    EXPECT_NEAR(std::pow(std::sin(ad_theta(g) / 2.0), 2), g, 1e-14);
    for (AdVariant v : {AdVariant::unitary_cnot, AdVariant::measure_feedback}) {
      EXPECT_LT(max_abs(extract_channel(build_ad_circuit(ad_theta(g), v)).channel.choi() -
                        amplitude_damping(g).choi()),
                1e-12);
    }
  }
}

TEST(Circuit, DeferredMeasurementEquivalence) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 5; ++t) {
    const double theta = std::uniform_real_distribution<double>(0.0, M_PI)(rng);
    const DensityMatrix rho(cftest::random_state(2, 2, rng));
    EXPECT_LT(max_abs(simulate(build_ad_circuit(theta, AdVariant::unitary_cnot), rho).matrix() -
                      simulate(build_ad_circuit(theta, AdVariant::measure_feedback), rho).matrix()),
              1e-13);
  }
}

TEST(Circuit, BranchProbabilitiesSumToOne) {
  std::mt19937_64 rng(43);
  const DensityMatrix rho(cftest::random_state(2, 2, rng));
  const SimulationResult r = simulate_branches(build_ad_circuit(1.0, AdVariant::measure_feedback), rho);
  ASSERT_EQ(r.branches.size(), 2u);
  double total = 0.0;
  for (const Branch& b : r.branches) {
    total += b.probability;
    EXPECT_NEAR(b.state.trace().real(), 1.0, 1e-12);
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
  // P(ancilla = 1) = sin^2(1/2) * rho_11.
  const auto& b1 = r.branches[0].registers.begin()->second == 1 ? r.branches[0] : r.branches[1];
  EXPECT_NEAR(b1.probability, std::pow(std::sin(0.5), 2) * rho.matrix()(1, 1).real(), 1e-13);
}

TEST(Circuit, ValidationCatchesStructuralErrors) {
  {
    Circuit c({{"d", 2, WireRole::data}});
    c.gate("bad", gate_cnot(), {0});
    EXPECT_THROW(c.validate(), ShapeError);
  }
  {
    Circuit c({{"d", 2, WireRole::data}});
    c.gate("x", gate_x(), {3});
    EXPECT_ANY_THROW(c.validate());
  }
  {
    Circuit c({{"d", 2, WireRole::data}});
    c.gate("x", gate_x(), {0}, Condition{"m", 1});
    EXPECT_THROW(c.validate(), ConfigError);
  }
  {
    Circuit c({{"d", 2, WireRole::data}, {"a", 2, WireRole::ancilla}});
    c.trace_out(1).gate("x", gate_x(), {1});
    EXPECT_ANY_THROW(c.validate());
  }
  {
    Circuit c({{"d", 2, WireRole::data}, {"a", 2, WireRole::ancilla}});
    c.gate("cx", gate_cnot(), {0, 0});
    EXPECT_ANY_THROW(c.validate());
  }
}

TEST(Circuit, ChannelInsertionCanChangeDimension) {
  Circuit c({{"d", 2, WireRole::data}});
  c.channel("erase", erasure(0.7, 2), {0});
  const SimulationResult r = simulate_branches(c, DensityMatrix::basis(2, 1));
  EXPECT_EQ(r.output_dims, std::vector<int>{3});
  EXPECT_NEAR(r.mixed_state().matrix()(2, 2).real(), 0.3, 1e-14);
}

TEST(Circuit, EntangledLeftoverAncillaIsRejectedByExtraction) {
  Circuit c({{"d", 2, WireRole::data}, {"a", 2, WireRole::ancilla}});
  c.gate("h", gate_h(), {1}).gate("cx", gate_cnot(), {1, 0});
  EXPECT_NO_THROW(simulate(c, DensityMatrix::basis(2, 0)));
  EXPECT_THROW(extract_channel(c), ConfigError);
}
