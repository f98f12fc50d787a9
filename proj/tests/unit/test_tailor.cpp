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

#include "channelforge/errors.hpp"
#include "channelforge/tailor.hpp"
#include "oracles.hpp"

using namespace channelforge;

namespace {

// Depolarizing weight on the identity for a shrink factor P = (4 p0 - 1) / 3.
double p0_of(double P) { return (3.0 * P + 1.0) / 4.0; }

std::vector<double> closed_form_lambda(const std::vector<double>& target, double PQ) {
  std::vector<double> out;
  for (double t : target) out.push_back((4.0 * t + PQ - 1.0) / (4.0 * PQ));
  return out;
}

MultiStartOptions small_search(std::uint64_t seed) {
  MultiStartOptions s;
  s.restarts = 2;
  s.seed = seed;
  s.local.max_evaluations = 400;
  return s;
}

}  // namespace

TEST(Tailor, CptpParameterizationAlwaysDecodesToAChannel) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  for (int dim : {1, 2, 3}) {
    const CptpParameterization par{dim, dim * dim};
    for (int t = 0; t < 20; ++t) {
      RealVector x(par.num_params());
      for (auto& v : x) v = g(rng);
      if (t == 0) x.setZero();
      const Channel ch = Channel::from_kraus(par.decode(x));
      EXPECT_TRUE(validate_cptp(ch).passed());
      EXPECT_LT(max_abs(superop_to_channel(par.decode_superop(x)).choi() - ch.choi()), 1e-12);
    }
    EXPECT_NEAR(choi_fidelity(Channel::from_kraus(par.decode(par.identity())), Channel::identity(dim)), 1.0,
                1e-12);
  }
}

TEST(Tailor, CptpParameterizationEncodeRoundTrip) {
  std::mt19937_64 rng(62);
  const CptpParameterization par{2, 4};
  for (int r = 1; r <= 4; ++r) {
    const KrausSet ks{cftest::random_kraus(2, 2, r, rng)};
    const Channel back = Channel::from_kraus(par.decode(par.encode(ks)));
    EXPECT_LT(max_abs(back.choi() - cftest::choi_oracle(ks.operators, 2)), 1e-12);
  }
  const CptpParameterization narrow{2, 2};
  EXPECT_THROW(narrow.encode(KrausSet{cftest::random_kraus(2, 2, 4, rng)}), ShapeError);
}

TEST(Tailor, BuildingBlockTrivialCaseIsExact) {
  BuildingBlockConfig cfg;
  cfg.search = small_search(1);
  const Channel target = amplitude_damping(0.3);
  const TailoringRecipe r = building_block_optimize(target, target, NoiseModel::noiseless(), cfg);
  EXPECT_NEAR(r.achieved_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(r.direct_fidelity, 1.0, 1e-12);
}

TEST(Tailor, BuildingBlockNeverWorseThanDirect) {
  for (Placement pl : {Placement::pre, Placement::post, Placement::interleaved}) {
    for (bool noisy : {true, false}) {
      BuildingBlockConfig cfg;
      cfg.placement = pl;
      cfg.noisy_blocks = noisy;
      cfg.search = small_search(2);
      const NoiseModel hw = NoiseModel::block_model(depolarizing(0.9));
      const Channel input = compose(depolarizing(0.9), amplitude_damping(0.1));
      const TailoringRecipe r = building_block_optimize(depolarizing(0.7), input, hw, cfg);
      EXPECT_GE(r.achieved_fidelity, r.direct_fidelity - 1e-9);
      EXPECT_NEAR(r.direct_fidelity, choi_fidelity(input, depolarizing(0.7)), 1e-12);
      const Channel out = building_block_output(r, input, hw);
      EXPECT_TRUE(validate_cptp(out).passed());
      EXPECT_NEAR(choi_fidelity(out, depolarizing(0.7)), r.achieved_fidelity, 1e-9);
      double total = 0.0;
      for (double p : r.probs) {
        EXPECT_GE(p, 0.0);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Tailor, BuildingBlockWarmStartIsNoWorseThanSeed) {
  BuildingBlockConfig cfg;
  cfg.search = small_search(3);
  const NoiseModel hw = NoiseModel::block_model(depolarizing(0.9));
  const Channel input = compose(depolarizing(0.9), amplitude_damping(0.1));
  const TailoringRecipe noisy = building_block_optimize(depolarizing(0.6), input, hw, cfg);
  cfg.noisy_blocks = false;
  const TailoringRecipe clean = building_block_optimize(depolarizing(0.6), input, hw, cfg, noisy);
  EXPECT_GE(clean.achieved_fidelity, noisy.achieved_fidelity - 1e-9);
}

TEST(Tailor, BuildingBlockRejectsGateModel) {
  BuildingBlockConfig cfg;
  EXPECT_THROW(building_block_optimize(depolarizing(0.9), depolarizing(0.9),
                                       NoiseModel::gate_model(depolarizing(0.9)), cfg),
               ConfigError);
}

TEST(Tailor, PauliIdentitySpecsReturnTarget) {
  std::mt19937_64 rng(63);
  const PauliDiagonalSpec target{cftest::random_distribution(4, rng)};
  const PauliTailorResult r = pauli_tailor(PauliDiagonalSpec::identity(1), PauliDiagonalSpec::identity(1), target);
  ASSERT_TRUE(r.feasible);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.lambda[i], target.probs[i], 1e-12);
}

TEST(Tailor, PauliDepolarizingExample) {
  const double P = 0.9, Q = 0.9;
  const PauliDiagonalSpec base = PauliDiagonalSpec::depolarizing(p0_of(P));
  const PauliDiagonalSpec hw = PauliDiagonalSpec::depolarizing(p0_of(Q));
  const PauliDiagonalSpec target{{0.85, 0.05, 0.05, 0.05}};
  const std::vector<double> expect = closed_form_lambda(target.probs, P * Q);

  for (const PauliTailorResult& r : {pauli_tailor(hw, base, target), pauli_tailor_depolarizing(p0_of(P), p0_of(Q), target)}) {
    ASSERT_TRUE(r.feasible);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.lambda[i], expect[i], 1e-12);
    const std::vector<double> mixed = cftest::pauli_triple_sum(hw.probs, r.lambda, base.probs);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(mixed[i], target.probs[i], 1e-12);
    const Channel out = pauli_tailored_channel(hw, base, r.lambda);
    EXPECT_LT(max_abs(out.choi() - pauli_diagonal(target).choi()), 1e-10);
  }
}

TEST(Tailor, PauliInfeasibleTarget) {
  // Identity weight above PQ + (1 - PQ)/4 = 0.8575.
  const PauliDiagonalSpec target{{0.9, 0.1 / 3, 0.1 / 3, 0.1 / 3}};
  EXPECT_FALSE(pauli_tailor_depolarizing(p0_of(0.9), p0_of(0.9), target).feasible);
  EXPECT_FALSE(pauli_tailor(PauliDiagonalSpec::depolarizing(p0_of(0.9)), PauliDiagonalSpec::depolarizing(p0_of(0.9)),
                            target)
                   .feasible);
}

TEST(Tailor, PauliGeneralMatchesTripleSumOracle) {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 20; ++t) {
    const PauliDiagonalSpec hw{{0.9, 0.04, 0.03, 0.03}};
    const PauliDiagonalSpec base{{0.8, 0.1, 0.05, 0.05}};
    const std::vector<double> lambda = cftest::random_distribution(4, rng);
    const PauliDiagonalSpec target{cftest::pauli_triple_sum(hw.probs, lambda, base.probs)};
    const PauliTailorResult r = pauli_tailor(hw, base, target);
    ASSERT_TRUE(r.feasible);
    EXPECT_FALSE(r.non_unique);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.lambda[i], lambda[i], 1e-10);
  }
}

TEST(Tailor, PauliSingularSystemIsFlaggedNonUnique) {
  // Fully depolarizing hardware noise: every lambda gives the same output.
  const PauliDiagonalSpec flat{{0.25, 0.25, 0.25, 0.25}};
  const PauliTailorResult r = pauli_tailor(flat, PauliDiagonalSpec::identity(1), flat);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.non_unique);
}

TEST(Tailor, AdRepeatExactHit) {
  const double hw = 0.2;
  const AdRepeatResult r = ad_repeat_tailor(hw, 1.0 - std::pow(1.0 - hw, 3), 8);
  EXPECT_EQ(r.n, 3);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
  EXPECT_NEAR(r.p_tilde, 1.0 - std::pow(0.8, 3), 1e-15);
  EXPECT_EQ(ad_repeat_tailor(hw, 0.9, 1).n, 1);
}

TEST(Tailor, ThetaTailorNoiselessRecoversIdealAngle) {
  const TailoringRecipe r = theta_tailor(amplitude_damping(0.36), [](double t) { return build_ad_circuit(t); },
                                         NoiseModel::noiseless());
  EXPECT_NEAR(r.circuit_params.at("theta"), 2.0 * std::asin(0.6), 1e-6);
  EXPECT_NEAR(r.achieved_fidelity, 1.0, 1e-12);
}

TEST(Tailor, ThetaTailorBeatsReferenceUnderNoise) {
  ThetaTailorConfig cfg;
  cfg.reference_theta = ad_theta(0.4);
  const NoiseModel hw = NoiseModel::gate_model(compose(dephasing(0.925), depolarizing(0.925)));
  const TailoringRecipe r =
      theta_tailor(amplitude_damping(0.4), [](double t) { return build_ad_circuit(t); }, hw, cfg);
  EXPECT_GE(r.achieved_fidelity, r.direct_fidelity - 1e-12);
}

TEST(Tailor, BlackboxQuadraticOracle) {
  BlackBoxConfig cfg;
  cfg.tolerance = 1e-12;
  const TailoringRecipe r =
      blackbox_optimize([](const RealVector& x) { return 1.0 - std::pow(x(0) - 1.0, 2); }, RealVector::Zero(1), cfg);
  EXPECT_NEAR(r.param_vector.at(0), 1.0, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Tailor, BlackboxBudgetExhaustionIsFlagged) {
  BlackBoxConfig cfg;
  cfg.budget = 10;
  const TailoringRecipe r = blackbox_optimize(
      [](const RealVector& x) { return -std::pow(x(0) - 3.0, 2) - std::pow(x(1) + 2.0, 2); }, RealVector::Zero(2), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.evaluations, 10);
  EXPECT_GE(r.achieved_fidelity, -13.0);
}

TEST(Tailor, BlackboxPauliOracleMatchesClosedForm) {
  const double P = 0.9;
  const PauliDiagonalSpec dep = PauliDiagonalSpec::depolarizing(p0_of(P));
  const PauliDiagonalSpec target{{0.7, 0.15, 0.08, 0.07}};
  const Channel tgt = pauli_diagonal(target);
  auto to_lambda = [](const RealVector& x) {
    std::vector<double> l(4);
    const double n = x.squaredNorm();
    for (int i = 0; i < 4; ++i) l[i] = x(i) * x(i) / n;
    return l;
  };
  BlackBoxConfig cfg;
  cfg.budget = 6000;
  cfg.tolerance = 1e-12;
  const TailoringRecipe r = blackbox_optimize(
      [&](const RealVector& x) { return choi_fidelity(pauli_tailored_channel(dep, dep, to_lambda(x)), tgt); },
      RealVector::Constant(4, 0.5), cfg);
  const std::vector<double> got = to_lambda(Eigen::Map<const RealVector>(r.param_vector.data(), 4));
  const std::vector<double> expect = closed_form_lambda(target.probs, P * P);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expect[i], 1e-3);
}

TEST(Tailor, OneParameterTemplateMatchesThetaTailor) {
  const NoiseModel hw = NoiseModel::block_model(dephasing(0.8));
  const Channel target = amplitude_damping(0.5);
  const TailoringRecipe theta = theta_tailor(target, [](double t) { return build_ad_circuit(t); }, hw);
  FullCircuitConfig cfg;
  cfg.search = small_search(4);
  const TailoringRecipe full = full_circuit_tailor(target, ad_theta_template(), hw, cfg);
  EXPECT_NEAR(full.achieved_fidelity, theta.achieved_fidelity, 1e-8);
}

TEST(Tailor, DegenerateTemplateIsExactAtDefaults) {
  const ParametricTemplate t = ad_full_template(1.3);
  const Channel target = extract_channel(t.build(t.defaults)).channel;
  EXPECT_NEAR(template_fidelity(t, t.defaults, NoiseModel::noiseless(), FidelityEvaluator(target.choi())), 1.0, 1e-12);
  FullCircuitConfig cfg;
  cfg.search = small_search(5);
  EXPECT_NEAR(full_circuit_tailor(target, t, NoiseModel::noiseless(), cfg).achieved_fidelity, 1.0, 1e-12);
}

TEST(Tailor, FullTemplateNoWorseThanSeededRestriction) {
  const NoiseModel hw = NoiseModel::block_model(compose(amplitude_damping(0.2), dephasing(0.8)));
  const Channel target = amplitude_damping(0.3);
  const TailoringRecipe theta = theta_tailor(target, [](double t) { return build_ad_circuit(t); }, hw);
  const ParametricTemplate t = ad_full_template(theta.circuit_params.at("theta"));
  FullCircuitConfig cfg;
  cfg.search = small_search(6);
  EXPECT_GE(full_circuit_tailor(target, t, hw, cfg).achieved_fidelity, theta.achieved_fidelity - 1e-9);
}

TEST(Tailor, AdOrderingInstance) {
  const AdOrdering o = ad_ordering(0.4, 0.45);
  EXPECT_GT(o.f3, o.f1);
  EXPECT_GT(o.f1, o.f2);
  // Repetition: n = 1 gives 0.4, n = 2 gives 0.64; 0.4 is closer.
  EXPECT_EQ(o.n1, 1);
  EXPECT_NEAR(o.f1, choi_fidelity(amplitude_damping(0.4), amplitude_damping(0.45)), 1e-12);
}
