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
#include <numeric>
#include <random>

#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"
#include "oracles.hpp"

using namespace channelforge;
using cftest::max_abs_diff;

namespace {

std::vector<double> grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / (n - 1));
  return g;
}

bool unital(const Channel& ch) {
  const ComplexMatrix mixed = ComplexMatrix::Identity(ch.dim_in(), ch.dim_in()) / double(ch.dim_in());
  return max_abs(apply(ch, DensityMatrix(mixed)).matrix() - mixed) < 1e-13;
}

}  // namespace

TEST(Noise, FamiliesAreCptpOverTheirRange) {
  for (double p : grid(11)) {
    for (const Channel& ch : {dephasing(p), depolarizing(p), white_noise(p), amplitude_damping(p),
                              bit_flip(p), rotation_noise_b(p), erasure(p, 2), erasure(p, 3)}) {
      EXPECT_TRUE(validate_cptp(ch).passed()) << p;
    }
  }
  EXPECT_TRUE(validate_cptp(reset_channel(3)).passed());
}

TEST(Noise, ParametersOutsideUnitIntervalAreRejected) {
  EXPECT_THROW(dephasing(1.1), InvalidChannelError);
  EXPECT_THROW(amplitude_damping(-0.1), InvalidChannelError);
  EXPECT_THROW(white_noise(std::nan("")), InvalidChannelError);
}

TEST(Noise, KrausOperatorsMatchDefinitions) {
  for (double p : grid(6)) {
    EXPECT_LT(max_abs(dephasing(p).choi() - cftest::choi_oracle(cftest::dephasing_kraus(p), 2)), 1e-14);
    EXPECT_LT(max_abs(depolarizing(p).choi() - cftest::choi_oracle(cftest::depolarizing_kraus(p), 2)), 1e-14);
    EXPECT_LT(max_abs(amplitude_damping(p).choi() - cftest::choi_oracle(cftest::ad_kraus(p), 2)), 1e-14);
  }
}

TEST(Noise, WhiteNoiseShrinksBlochVector) {
  std::mt19937_64 rng(31);
  for (double q : grid(5)) {
    const ComplexMatrix rho = cftest::random_state(2, 2, rng);
    const ComplexMatrix expect = q * rho + (1 - q) * ComplexMatrix::Identity(2, 2) / 2.0;
    EXPECT_LT(max_abs_diff(apply(white_noise(q), DensityMatrix(rho)).matrix(), expect), 1e-14);
  }
}

TEST(Noise, UnitalityClassification) {
  for (double p : {0.0, 0.3, 0.9}) {
    EXPECT_TRUE(unital(dephasing(p)));
    EXPECT_TRUE(unital(depolarizing(p)));
    EXPECT_TRUE(unital(bit_flip(p)));
    EXPECT_TRUE(unital(rotation_noise_b(p)));
  }
  EXPECT_FALSE(unital(amplitude_damping(0.3)));
  EXPECT_TRUE(unital(amplitude_damping(0.0)));
}

TEST(Noise, AmplitudeDampingCompositionLaw) {
  for (double g1 : grid(10)) {
    for (double g2 : grid(10)) {
      const double g = 1.0 - (1.0 - g1) * (1.0 - g2);
      EXPECT_LT(max_abs(compose(amplitude_damping(g2), amplitude_damping(g1)).choi() -
                        amplitude_damping(g).choi()),
                1e-12)
          << g1 << " " << g2;
    }
  }
}

TEST(Noise, PauliProbabilitiesOfDiagonalChannels) {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 2; ++n) {
    PauliDiagonalSpec spec{cftest::random_distribution(1 << (2 * n), rng)};
    const Channel ch = pauli_diagonal(spec);
    const std::vector<double> got = pauli_probabilities(ch);
    ASSERT_EQ(got.size(), spec.probs.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], spec.probs[i], 1e-13);
    EXPECT_TRUE(is_pauli_diagonal(ch));
  }
  const std::vector<double> dp = pauli_probabilities(depolarizing(0.7));
  EXPECT_NEAR(dp[0], 0.7, 1e-14);
  EXPECT_NEAR(dp[3], 0.1, 1e-14);
}

TEST(Noise, PauliStringOrderingAndProducts) {
  EXPECT_LT(max_abs(pauli_string(1 * 4 + 3, 2) - kron(pauli(1), pauli(3))), 1e-15);
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const ComplexMatrix prod = pauli_string(a, 2) * pauli_string(b, 2);
      const ComplexMatrix ref = pauli_string(pauli_product_index(a, b, 2), 2);
      const Complex overlap = (ref.adjoint() * prod).trace() / 4.0;
      EXPECT_NEAR(std::abs(overlap), 1.0, 1e-14);
    }
  }
}

TEST(Noise, RotationNoiseIsNotPauliDiagonal) {
  EXPECT_FALSE(is_pauli_diagonal(rotation_noise_b(0.5)));
  EXPECT_TRUE(is_pauli_diagonal(rotation_noise_b(1.0)));
  EXPECT_FALSE(is_pauli_diagonal(amplitude_damping(0.2)));
}

TEST(Noise, PauliSpecValidation) {
  EXPECT_THROW(pauli_diagonal(PauliDiagonalSpec{{0.5, 0.5, 0.1}}), InvalidChannelError);
  EXPECT_THROW(pauli_diagonal(PauliDiagonalSpec{{0.5, 0.6, 0.0, -0.1}}), InvalidChannelError);
  EXPECT_THROW(pauli_diagonal(PauliDiagonalSpec{{0.5, 0.4, 0.0, 0.0}}), InvalidChannelError);
  EXPECT_EQ(PauliDiagonalSpec::depolarizing(0.4, 2).probs.size(), 16u);
}

TEST(Noise, ErasureFlagsTheExtraLevel) {
  std::mt19937_64 rng(33);
  const ComplexMatrix rho = cftest::random_state(3, 2, rng);
  const ComplexMatrix out = apply(erasure(0.6, 3), DensityMatrix(rho)).matrix();
  ASSERT_EQ(out.rows(), 4);
  EXPECT_LT(max_abs(out.topLeftCorner(3, 3) - 0.6 * rho), 1e-14);
  EXPECT_NEAR(out(3, 3).real(), 0.4, 1e-14);
  EXPECT_LT(max_abs(out.block(0, 3, 3, 1)), 1e-15);
}

TEST(Noise, ResetPreparesZero) {
  std::mt19937_64 rng(34);
  const ComplexMatrix out = apply(reset_channel(3), DensityMatrix(cftest::random_state(3, 3, rng))).matrix();
  EXPECT_LT(max_abs_diff(out, cftest::ket_bra(3, 0, 0)), 1e-14);
}
