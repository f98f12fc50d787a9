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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "channelforge/circuit.hpp"

namespace channelforge {

/// Named-column numeric table; one row per parameter tuple.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Header line plus rows, 12 significant digits.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  double at(std::size_t row, const std::string& column) const;
};

struct SweepOptions {
  int jobs = 1;
  std::uint64_t seed = 1;
  int restarts = 8;
  int max_evaluations = 2000;
};

/// Inclusive arithmetic grid; the last point is snapped to `hi`.
std::vector<double> linspace_step(double lo, double hi, double step);

/// Bit-flip target under rotation noise: direct, interleaved with noisy
/// blocks, interleaved with noiseless blocks (all infidelities).
Table fig5a(const std::vector<double>& qs, const SweepOptions& opt, double target_p = 0.95);

/// Amplitude damping input turned into depolarizing targets.
Table fig5b(const std::vector<double>& target_ps, const SweepOptions& opt, double gamma = 0.1,
            double hw_q = 0.9);

/// theta tailoring of the AD circuit under per-wire depolarizing then
/// dephasing gate noise.
Table fig6a(const std::vector<double>& gammas, double hw_q = 0.925,
            AdVariant variant = AdVariant::unitary_cnot);

/// theta-only versus the full single-qubit-rotation template, block noise.
Table fig6b(const std::vector<double>& gammas, const SweepOptions& opt, double hw_q = 0.8);

/// Depolarizing targets under dephasing then amplitude-damping block noise:
/// direct Pauli mixture, optimized Pauli weights, full CPTP template.
Table fig6c(const std::vector<double>& target_ps, const SweepOptions& opt, double hw_q = 0.8,
            double hw_gamma = 0.2);

/// Best achievable bit-flip fidelity of the two bit-flip circuits over
/// their internal parameter, on a (P, q) grid.
Table fig7c(const std::vector<double>& Ps, const std::vector<double>& qs, int jobs = 1);

/// Simulated fidelities of the two bit-flip circuits with white gate noise.
double bitflip_fidelity_a(double target_P, double p, double q);
double bitflip_fidelity_b(double target_P, double p, double q);

}  // namespace channelforge
