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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "channelforge/channel.hpp"

namespace channelforge {

/// Classical condition on a previously received message.
struct MessageCondition {
  std::string message;
  int value = 1;
};

/// Brings new registers into the global state, prepared jointly in `state`
/// (a ket or a density matrix over the listed registers; |0...0> if empty).
struct AddRegistersEvent {
  std::vector<std::string> registers;
  std::vector<int> dims;
  std::optional<ComplexMatrix> state;
};

struct GateEvent {
  std::string name;
  std::vector<double> params;
  std::optional<ComplexMatrix> unitary;  // overrides the named gate
  std::vector<std::string> registers;
  std::optional<MessageCondition> condition;
};

/// Any CPTP map: links, memories, imperfect operations.
struct ChannelEvent {
  std::string name;
  Channel channel;
  std::vector<std::string> registers;
  std::optional<MessageCondition> condition;
};

/// Computational-basis measurement whose outcome is sent as `message`.
struct MeasureEvent {
  std::string reg;
  std::string message;
};

struct RemoveRegistersEvent {
  std::vector<std::string> registers;
};

using NetworkEventBody =
    std::variant<AddRegistersEvent, GateEvent, ChannelEvent, MeasureEvent, RemoveRegistersEvent>;

struct NetworkEvent {
  double time = 0.0;
  NetworkEventBody body;
};

/// Fidelity of the reduced state on `registers` with `target` (ket or
/// density matrix, factors in the listed order).
struct FidelityQuery {
  std::string name;
  std::vector<std::string> registers;
  ComplexMatrix target;
};

struct StateQuery {
  std::string name;
  std::vector<std::string> registers;
};

struct NetworkScenario {
  std::map<std::string, std::vector<std::string>> nodes;
  std::vector<NetworkEvent> events;
  std::vector<FidelityQuery> fidelities;
  std::vector<StateQuery> states;

  /// Events in execution order (stable sort by time).
  std::vector<NetworkEvent> ordered_events() const;

  /// Register liveness, message causality, query targets and the engine cap.
  void validate() const;
};

struct MessageRecord {
  std::map<std::string, int> messages;
  double probability = 0.0;
};

struct NetworkReport {
  std::map<std::string, double> fidelities;
  std::map<std::string, ComplexMatrix> states;
  std::vector<std::string> live_registers;
  std::vector<MessageRecord> message_log;
  double trace = 0.0;
  int events_applied = 0;
};

/// Global live dimension limit (12 qubits).
inline constexpr std::int64_t kNetworkMaxDimension = 4096;

NetworkReport run_scenario(const NetworkScenario& s);

struct ResourceEstimate {
  int n = 0;
  int m = 0;
  int k = 0;
  std::int64_t active_qubits = 0;
  std::int64_t qubits_required = 0;
};

/// Register count for k rounds of m-to-1 purification on n-qubit states.
ResourceEstimate resource_estimate(int n, int m, int k);

}  // namespace channelforge
