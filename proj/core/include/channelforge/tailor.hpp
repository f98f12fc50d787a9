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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "channelforge/channel.hpp"
#include "channelforge/circuit.hpp"
#include "channelforge/noise.hpp"
#include "channelforge/noise_model.hpp"
#include "channelforge/optimize.hpp"

namespace channelforge {

enum class TailorMethod { building_block, tailored_circuit, black_box };
enum class Placement { pre, post, interleaved };

/// Output of every tailoring method.
///
/// Building-block recipes realize sum_ij probs[i * pre.size() + j]
/// post_i' o input o pre_j'. A primed block is the hardware-noise decorated
/// block when the matching *_decorated flag is set; an undecorated identity
/// stands for an omitted block.
struct TailoringRecipe {
  TailorMethod method = TailorMethod::building_block;
  std::vector<Channel> pre_channels;
  std::vector<bool> pre_decorated;
  std::vector<Channel> post_channels;
  std::vector<bool> post_decorated;
  std::vector<double> probs;
  std::map<std::string, double> circuit_params;
  std::vector<double> param_vector;
  double achieved_fidelity = 0.0;
  double direct_fidelity = 0.0;
  bool converged = false;
  int evaluations = 0;
  nlohmann::json settings = nlohmann::json::object();
};

// ------------------------------------------------------------- Method 1

/// CPTP map decoded from an unconstrained real vector: a complex
/// (ancilla_dim * dim) x dim matrix A made isometric as A (A^dagger A)^(-1/2),
/// whose row blocks are the Kraus operators.
struct CptpParameterization {
  int dim = 2;
  int ancilla_dim = 4;

  int num_params() const { return 2 * ancilla_dim * dim * dim; }
  KrausSet decode(const RealVector& x) const;
  Superoperator decode_superop(const RealVector& x) const;
  /// Parameters of an isometry whose Kraus set is `ks` (padded with zero
  /// operators up to ancilla_dim). Throws ShapeError if ks has too many
  /// operators.
  RealVector encode(const KrausSet& ks) const;
  RealVector identity() const;
};

struct BuildingBlockConfig {
  Placement placement = Placement::interleaved;
  int mixture_size = 2;
  /// 0 selects dim^2.
  int ancilla_dim = 0;
  /// Blocks suffer the hardware block noise.
  bool noisy_blocks = true;
  MultiStartOptions search{};
};

/// Maximizes F(sum_ij p_ij post_i' o input_impl o pre_j', target). The direct
/// implementation (both blocks omitted) seeds the first restart, so the
/// result is never worse than F(input_impl, target). `hw` must be a block or
/// noiseless model; a gate model raises ConfigError.
TailoringRecipe building_block_optimize(const Channel& target, const Channel& input_impl,
                                        const NoiseModel& hw, const BuildingBlockConfig& cfg);

/// Same search warm-started from an existing recipe. A noisy-block recipe
/// used as the seed of a noiseless search is re-expressed with the noise
/// absorbed into the blocks, so the result is at least as good as the seed.
TailoringRecipe building_block_optimize(const Channel& target, const Channel& input_impl,
                                        const NoiseModel& hw, const BuildingBlockConfig& cfg,
                                        const TailoringRecipe& seed);

/// Rebuilds the output channel a building-block recipe implements.
Channel building_block_output(const TailoringRecipe& recipe, const Channel& input_impl,
                              const NoiseModel& hw);

// ------------------------------------------------------------- Method 2

struct PauliTailorResult {
  bool feasible = false;
  std::vector<double> lambda;
  bool non_unique = false;
  /// ||M lambda - target||_inf.
  double residual = 0.0;
};

/// Finds lambda with target = q * lambda * p (Pauli-group convolution), a
/// valid distribution, within 1e-9.
PauliTailorResult pauli_tailor(const PauliDiagonalSpec& hw_q, const PauliDiagonalSpec& base_p,
                               const PauliDiagonalSpec& target);

/// Single-qubit depolarizing closed form with weights p0 (base) and q0 (hw)
/// on the identity.
PauliTailorResult pauli_tailor_depolarizing(double p0, double q0, const PauliDiagonalSpec& target);

/// E_q o (sum_j lambda_j Sigma_j . Sigma_j) o E_p.
Channel pauli_tailored_channel(const PauliDiagonalSpec& hw_q, const PauliDiagonalSpec& base_p,
                               const std::vector<double>& lambda);

struct AdRepeatResult {
  int n = 1;
  double p_tilde = 0.0;
  double fidelity = 0.0;
};

/// Best number of repetitions of AD(hw_P) towards AD(target_P); ties within
/// 1e-12 go to the smaller n.
AdRepeatResult ad_repeat_tailor(double hw_P, double target_P, int n_max);

struct ThetaTailorConfig {
  double lo = 0.0;
  double hi = 3.14159265358979323846;
  int grid = 181;
  /// Reported as direct_fidelity when set.
  std::optional<double> reference_theta;
};

/// Maximizes F(extract(apply_noise_model(builder(theta), hw)), target) by a
/// grid scan plus Brent refinement.
TailoringRecipe theta_tailor(const Channel& target, const std::function<Circuit(double)>& builder,
                             const NoiseModel& hw, const ThetaTailorConfig& cfg = {});

/// Circuit family with k real parameters.
struct ParametricTemplate {
  std::vector<std::string> names;
  RealVector defaults;
  std::function<Circuit(const RealVector&)> build;

  int num_params() const { return static_cast<int>(defaults.size()); }
};

/// controlled-Ry(theta) amplitude damping circuit, one parameter.
ParametricTemplate ad_theta_template(AdVariant variant = AdVariant::unitary_cnot);

/// Ry(a) data, Ry(b) ancilla, controlled-Ry(theta), Ry(c) ancilla, CNOT,
/// Ry(e) data; the theta-only circuit sits at a = b = c = e = 0.
ParametricTemplate ad_full_template(double theta0, AdVariant variant = AdVariant::unitary_cnot);

/// Circuit-level fidelity of a template at parameters x.
double template_fidelity(const ParametricTemplate& t, const RealVector& x, const NoiseModel& hw,
                         const FidelityEvaluator& target);

struct FullCircuitConfig {
  MultiStartOptions search{};
  /// Additional starting points, each run with the local optimizer.
  std::vector<RealVector> extra_seeds;
};

TailoringRecipe full_circuit_tailor(const Channel& target, const ParametricTemplate& tmpl,
                                    const NoiseModel& hw, const FullCircuitConfig& cfg = {});

struct AdOrdering {
  double f1 = 0.0;
  int n1 = 1;
  double f2 = 0.0;
  double f3 = 0.0;
  double theta3 = 0.0;
};

/// Repetition (F1), naive noisy circuit (F2) and theta-optimized noisy
/// circuit (F3) for an AD target with AD(hw_P) hardware noise on the output.
AdOrdering ad_ordering(double hw_P, double target_P, int n_max = 8);

// ------------------------------------------------------------- Method 3

struct BlackBoxConfig {
  int budget = 2000;
  int restarts = 1;
  std::uint64_t seed = 0;
  OptimizerKind kind = OptimizerKind::nelder_mead;
  double initial_step = 0.1;
  double tolerance = 1e-8;
  double spread = 0.5;
};

/// Maximizes a fidelity oracle from x0. Sets converged=false when the budget
/// runs out first.
TailoringRecipe blackbox_optimize(const std::function<double(const RealVector&)>& oracle,
                                  const RealVector& x0, const BlackBoxConfig& cfg = {});

}  // namespace channelforge
