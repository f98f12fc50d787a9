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
#include <string>
#include <variant>
#include <vector>

#include "channelforge/channel.hpp"

namespace channelforge {

// ------------------------------------------------------------------ gates

ComplexMatrix gate_x();
ComplexMatrix gate_y();
ComplexMatrix gate_z();
ComplexMatrix gate_h();
/// exp(-i theta Y / 2).
ComplexMatrix gate_ry(double theta);
/// Control is the first (most significant) qubit.
ComplexMatrix gate_cnot();
ComplexMatrix gate_cry(double theta);
/// Qudit shift X_D |j> = |j-1 mod D>.
ComplexMatrix gate_shift(int dim);

/// Named gate lookup used by the circuit file format: x, y, z, h, ry(theta),
/// cnot, cx, cry(theta), shift(dim). Throws ConfigError for unknown names.
ComplexMatrix named_gate(const std::string& name, const std::vector<double>& params);

// ---------------------------------------------------------------- circuit

enum class WireRole { data, ancilla };

struct Wire {
  std::string label;
  int dim = 2;
  WireRole role = WireRole::data;
};

/// Classical condition: the element acts only in branches where the
/// register holds `value`.
struct Condition {
  std::string reg;
  int value = 1;
};

using Registers = std::map<std::string, int>;

struct GateOp {
  std::string name;
  std::vector<double> params;
  ComplexMatrix unitary;
  std::vector<int> wires;
  std::optional<Condition> condition;
};

struct ChannelOp {
  std::string name;
  Channel channel;
  std::vector<int> wires;
  std::optional<Condition> condition;
  /// Counts as an elementary hardware operation for gate-model noise.
  bool hardware_op = false;
};

struct MeasureOp {
  int wire = 0;
  std::string reg;
  /// Empty means the computational basis of the wire.
  std::vector<ComplexMatrix> projectors;
};

struct ResetOp {
  int wire = 0;
};

struct TraceOutOp {
  int wire = 0;
};

using Element = std::variant<GateOp, ChannelOp, MeasureOp, ResetOp, TraceOutOp>;

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<Wire> wires);

  int add_wire(std::string label, int dim = 2, WireRole role = WireRole::data);

  Circuit& gate(std::string name, ComplexMatrix unitary, std::vector<int> wires,
                std::optional<Condition> condition = std::nullopt);
  /// Named gate with parameters recorded for serialization.
  Circuit& named(const std::string& name, std::vector<double> params, std::vector<int> wires,
                 std::optional<Condition> condition = std::nullopt);
  Circuit& channel(std::string name, Channel ch, std::vector<int> wires, bool hardware_op = false,
                   std::optional<Condition> condition = std::nullopt);
  Circuit& measure(int wire, std::string reg, std::vector<ComplexMatrix> projectors = {});
  Circuit& reset(int wire);
  Circuit& trace_out(int wire);
  Circuit& append(Element e);

  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::vector<int> data_wires() const;
  std::vector<int> ancilla_wires() const;

  /// Structural checks: wire indices, operator shapes against the wire
  /// dimensions at that point, no use after trace-out, and classical
  /// conditions that refer to earlier measurements. Throws ConfigError or
  /// ShapeError.
  void validate() const;

 private:
  std::vector<Wire> wires_;
  std::vector<Element> elements_;
};

// ------------------------------------------------------------- simulation

struct Branch {
  Registers registers;
  double probability = 0.0;
  /// Normalized post-measurement state on the live data wires.
  ComplexMatrix state;
};

struct SimulationResult {
  /// Live data wires at the end, ascending.
  std::vector<int> output_wires;
  std::vector<int> output_dims;
  std::vector<Branch> branches;

  /// Outcomes erased: probability-weighted sum of branch states.
  DensityMatrix mixed_state() const;
};

/// Exact branch-resolved simulation. `rho_in` lives on the data wires in
/// ascending order; ancillas start in |0>. Live ancillas are traced out at
/// the end.
SimulationResult simulate_branches(const Circuit& c, const DensityMatrix& rho_in);

DensityMatrix simulate(const Circuit& c, const DensityMatrix& rho_in);

struct BranchRecord {
  Registers registers;
  double probability = 0.0;
};

struct ProcessResult {
  Channel channel;
  /// Outcome probabilities for a maximally mixed data input.
  std::vector<BranchRecord> branch_log;
};

/// Choi state of the map implemented on the data wires, from simulating the
/// circuit on one half of a maximally entangled state. Ancillas still live
/// at the end must be in a product state with the rest; otherwise
/// ConfigError.
ProcessResult extract_channel(const Circuit& c);

// ---------------------------------------------------------------- library

/// One data wire; a stochastic X (identity with probability p) realized as a
/// single hardware channel insertion.
Circuit build_bitflip_circuit_a(double p);

/// Data wire 0, ancilla 1: Ry(theta) on the ancilla with sin^2(theta/2) = 1-p,
/// CNOT ancilla -> data, trace out the ancilla.
Circuit build_bitflip_circuit_b(double p);

enum class AdVariant { unitary_cnot, measure_feedback };

/// Data wire 0, ancilla 1: controlled-Ry(theta) data -> ancilla, then either
/// CNOT ancilla -> data or a measurement of the ancilla followed by a
/// classically conditioned X on the data wire; the ancilla is traced out.
Circuit build_ad_circuit(double theta, AdVariant variant = AdVariant::unitary_cnot);

/// Ry angle realizing amplitude damping gamma: 2 asin(sqrt(gamma)).
double ad_theta(double gamma);

}  // namespace channelforge
