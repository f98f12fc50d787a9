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

#include "channelforge/circuit.hpp"
#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"
#include "channelforge/noise_model.hpp"
#include "oracles.hpp"

using namespace channelforge;

namespace {

double fid_a(double P, double p, double q) {
  const Circuit c = apply_noise_model(build_bitflip_circuit_a(p), NoiseModel::gate_model(white_noise(q)));
  return choi_fidelity(extract_channel(c).channel, bit_flip(P));
}

double fid_b(double P, double p, double q) {
  const Circuit c = apply_noise_model(build_bitflip_circuit_b(p), NoiseModel::gate_model(white_noise(q)));
  return choi_fidelity(extract_channel(c).channel, bit_flip(P));
}

}  // namespace

TEST(NoiseModel, BitflipCircuitsMatchClosedForms) {
  for (double P : {0.6, 0.85, 0.99}) {
    for (double p : {0.0, 0.3, 0.75, 1.0}) {
      for (double q : {0.5, 0.9, 1.0}) {
        EXPECT_NEAR(fid_a(P, p, q), cftest::fa_closed(P, p, q), 1e-10) << P << " " << p << " " << q;
        EXPECT_NEAR(fid_b(P, p, q), cftest::fb_closed(P, p, q), 1e-10) << P << " " << p << " " << q;
      }
    }
  }
}

TEST(NoiseModel, InsertionCounts) {
  const NoiseModel nm = NoiseModel::gate_model(white_noise(0.9));
  EXPECT_EQ(count_noise_insertions(build_bitflip_circuit_a(0.5), nm), 1);
  // Ry on the ancilla, then two wires of CNOT noise.
  EXPECT_EQ(count_noise_insertions(build_bitflip_circuit_b(0.5), nm), 3);
  EXPECT_EQ(count_noise_insertions(build_bitflip_circuit_b(0.5), NoiseModel::noiseless()), 0);
}

TEST(NoiseModel, MissingArityRaisesConfigError) {
  const NoiseModel nm = NoiseModel::gate_model(white_noise(0.9), 1);
  EXPECT_NO_THROW(apply_noise_model(build_bitflip_circuit_a(0.5), nm));
  EXPECT_THROW(apply_noise_model(build_bitflip_circuit_b(0.5), nm), ConfigError);
}

TEST(NoiseModel, BlockModelAppendsTrailingNoise) {
  const NoiseModel nm = NoiseModel::block_model(dephasing(0.8));
  const Channel got = extract_channel(apply_noise_model(build_ad_circuit(ad_theta(0.3)), nm)).channel;
  EXPECT_LT(max_abs(got.choi() - compose(dephasing(0.8), amplitude_damping(0.3)).choi()), 1e-12);
}

TEST(NoiseModel, IdentityNoiseLeavesChannelUnchanged) {
  const NoiseModel nm = NoiseModel::gate_model(Channel::identity(2));
  const Channel got = extract_channel(apply_noise_model(build_ad_circuit(ad_theta(0.4)), nm)).channel;
  EXPECT_LT(max_abs(got.choi() - amplitude_damping(0.4).choi()), 1e-12);
}

TEST(NoiseModel, ValidateRejectsBadChannels) {
  ComplexMatrix choi = ComplexMatrix::Zero(2, 2);
  choi(0, 0) = 1.2;
  choi(1, 1) = -0.2;
  NoiseModel nm = NoiseModel::block_model(Channel::from_choi_unchecked(choi, 1, 2));
  EXPECT_THROW(nm.validate(), InvalidChannelError);
  EXPECT_NO_THROW(NoiseModel::gate_model(depolarizing(0.9)).validate());
}
