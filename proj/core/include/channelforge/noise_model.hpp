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

#include <map>
#include <optional>
#include <vector>

#include "channelforge/circuit.hpp"

namespace channelforge {

enum class NoiseKind { none, gate, block };

// Hardware noise description.
//
// Gate model: after every gate (and every channel insertion flagged as a
// hardware op) of arity k, gate_noise[k][j] acts on the j-th touched wire,
// in ascending wire order. A measurement is preceded by measurement_noise,
// or gate_noise[1][0] when that is unset.
//
// Block model: trailing_noise acts once on every live data wire after the
// whole circuit. A trailing channel whose dimension equals the joint data
// dimension acts on all data wires together instead.
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  std::map<int, std::vector<Channel>> gate_noise;
  std::optional<Channel> trailing_noise;
  std::optional<Channel> measurement_noise;

  static NoiseModel noiseless();
  // Same single-wire channel on every touched wire for arities 1..max_arity.
  static NoiseModel gate_model(const Channel& per_wire, int max_arity = 2);
  static NoiseModel block_model(const Channel& trailing);

  // Every contained channel passes validate_cptp; throws InvalidChannelError.
  void validate() const;
};

// Returns a noisy copy of `c`. Throws ConfigError naming the element when a
// gate arity has no noise entry.
Circuit apply_noise_model(const Circuit& c, const NoiseModel& nm);

// Number of channel insertions the gate model adds to `c`.
int count_noise_insertions(const Circuit& c, const NoiseModel& nm);

}  // namespace channelforge
