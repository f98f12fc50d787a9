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

#include "channelforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"

namespace channelforge {

// ------------------------------------------------------------------ gates

ComplexMatrix gate_x() { return pauli(1); }
ComplexMatrix gate_y() { return pauli(2); }
ComplexMatrix gate_z() { return pauli(3); }

ComplexMatrix gate_h() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

ComplexMatrix gate_ry(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

ComplexMatrix gate_cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

ComplexMatrix gate_cry(double theta) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m.bottomRightCorner(2, 2) = gate_ry(theta);
  return m;
}

ComplexMatrix gate_shift(int dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) m((j - 1 + dim) % dim, j) = 1.0;
  return m;
}

ComplexMatrix named_gate(const std::string& name, const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw ConfigError("gate '" + name + "' expects " + std::to_string(n) + " parameter(s)");
    }
  };
  if (name == "x") return need(0), gate_x();
  if (name == "y") return need(0), gate_y();
  if (name == "z") return need(0), gate_z();
  if (name == "h") return need(0), gate_h();
  if (name == "id") return need(0), ComplexMatrix::Identity(2, 2);
  if (name == "ry") return need(1), gate_ry(params[0]);
  if (name == "cnot" || name == "cx") return need(0), gate_cnot();
  if (name == "cry") return need(1), gate_cry(params[0]);
  if (name == "shift") {
    need(1);
    return gate_shift(static_cast<int>(params[0]));
  }
  throw ConfigError("unknown gate '" + name + "'");
}

// ---------------------------------------------------------------- circuit

Circuit::Circuit(std::vector<Wire> wires) : wires_(std::move(wires)) {}

int Circuit::add_wire(std::string label, int dim, WireRole role) {
  if (dim < 1) throw ShapeError("add_wire: dimension must be positive");
  wires_.push_back(Wire{std::move(label), dim, role});
  return static_cast<int>(wires_.size()) - 1;
}

Circuit& Circuit::gate(std::string name, ComplexMatrix unitary, std::vector<int> wires,
                       std::optional<Condition> condition) {
  return append(GateOp{std::move(name), {}, std::move(unitary), std::move(wires),
                       std::move(condition)});
}

Circuit& Circuit::named(const std::string& name, std::vector<double> params,
                        std::vector<int> wires, std::optional<Condition> condition) {
  ComplexMatrix u = named_gate(name, params);
  return append(GateOp{name, std::move(params), std::move(u), std::move(wires),
                       std::move(condition)});
}

Circuit& Circuit::channel(std::string name, Channel ch, std::vector<int> wires, bool hardware_op,
                          std::optional<Condition> condition) {
  return append(ChannelOp{std::move(name), std::move(ch), std::move(wires), std::move(condition),
                          hardware_op});
}

Circuit& Circuit::measure(int wire, std::string reg, std::vector<ComplexMatrix> projectors) {
  return append(MeasureOp{wire, std::move(reg), std::move(projectors)});
}

Circuit& Circuit::reset(int wire) { return append(ResetOp{wire}); }
Circuit& Circuit::trace_out(int wire) { return append(TraceOutOp{wire}); }

Circuit& Circuit::append(Element e) {
  elements_.push_back(std::move(e));
  return *this;
}

std::vector<int> Circuit::data_wires() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < wires_.size(); ++i)
    if (wires_[i].role == WireRole::data) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Circuit::ancilla_wires() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < wires_.size(); ++i)
    if (wires_[i].role == WireRole::ancilla) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

std::string element_label(std::size_t index) { return "element " + std::to_string(index); }

}  // namespace

void Circuit::validate() const {
  const int nw = static_cast<int>(wires_.size());
  std::vector<int> dims(nw);
  std::vector<bool> live(nw, true);
  for (int w = 0; w < nw; ++w) dims[w] = wires_[w].dim;
  std::set<std::string> measured;

  auto check_wires = [&](const std::vector<int>& ws, std::size_t idx) {
    if (ws.empty()) throw ConfigError(element_label(idx) + ": no target wires");
    std::set<int> seen;
    int prod = 1;
    for (int w : ws) {
      if (w < 0 || w >= nw) throw ConfigError(element_label(idx) + ": wire " + std::to_string(w) + " does not exist");
      if (!live[w]) throw ConfigError(element_label(idx) + ": wire " + std::to_string(w) + " was traced out");
      if (!seen.insert(w).second) throw ConfigError(element_label(idx) + ": repeated wire");
      prod *= dims[w];
    }
    return prod;
  };
  auto check_condition = [&](const std::optional<Condition>& c, std::size_t idx) {
    if (c && !measured.count(c->reg)) {
      throw ConfigError(element_label(idx) + ": condition on register '" + c->reg +
                        "' that no earlier measurement writes");
    }
  };

  for (std::size_t idx = 0; idx < elements_.size(); ++idx) {
    const Element& e = elements_[idx];
    if (const auto* g = std::get_if<GateOp>(&e)) {
      const int d = check_wires(g->wires, idx);
      if (g->unitary.rows() != d || g->unitary.cols() != d) {
        throw ShapeError(element_label(idx) + " (" + g->name + "): unitary does not match wire dimensions");
      }
      if (!is_unitary(g->unitary, 1e-10)) {
        throw ConfigError(element_label(idx) + " (" + g->name + "): matrix is not unitary");
      }
      check_condition(g->condition, idx);
    } else if (const auto* c = std::get_if<ChannelOp>(&e)) {
      const int d = check_wires(c->wires, idx);
      if (c->channel.dim_in() != d) {
        throw ShapeError(element_label(idx) + " (" + c->name + "): channel input dimension does not match wires");
      }
      if (c->channel.dim_out() != d) {
        if (c->wires.size() != 1) {
          throw ShapeError(element_label(idx) + " (" + c->name + "): dimension-changing channels act on one wire");
        }
        dims[c->wires[0]] = c->channel.dim_out();
      }
      check_condition(c->condition, idx);
    } else if (const auto* m = std::get_if<MeasureOp>(&e)) {
      const int d = check_wires({m->wire}, idx);
      if (!m->projectors.empty()) {
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const auto& p : m->projectors) {
          if (p.rows() != d || p.cols() != d) throw ShapeError(element_label(idx) + ": projector shape");
          if (max_abs(p * p - p) > 1e-10 || !is_hermitian(p, 1e-10)) {
            throw ConfigError(element_label(idx) + ": measurement operator is not a projector");
          }
          sum += p;
        }
        if (max_abs(sum - ComplexMatrix::Identity(d, d)) > 1e-10) {
          throw ConfigError(element_label(idx) + ": projectors do not sum to identity");
        }
      }
      measured.insert(m->reg);
    } else if (const auto* r = std::get_if<ResetOp>(&e)) {
      check_wires({r->wire}, idx);
    } else if (const auto* t = std::get_if<TraceOutOp>(&e)) {
      check_wires({t->wire}, idx);
      live[t->wire] = false;
    }
  }
}

// ------------------------------------------------------------- simulation

namespace {

constexpr Eigen::Index kMaxDimension = 4096;  // 12 qubits
constexpr double kDropBranch = 1e-15;
constexpr int kReference = -1;

Eigen::Index product(const std::vector<int>& dims) {
  Eigen::Index p = 1;
  for (int d : dims) p *= d;
  return p;
}

struct Register {
  std::vector<int> order;  // tensor factor -> wire index (or kReference)
  std::vector<int> dims;

  int position_of(int wire) const {
    const auto it = std::find(order.begin(), order.end(), wire);
    return static_cast<int>(it - order.begin());
  }
};

ComplexMatrix apply_local(const ComplexMatrix& rho, const Register& reg,
                          const std::vector<int>& wires, const std::vector<ComplexMatrix>& kraus,
                          std::vector<int>* new_dims) {
  std::vector<int> targets;
  for (int w : wires) targets.push_back(reg.position_of(w));
  return apply_on_subsystems(rho, reg.dims, targets, kraus, new_dims);
}

ComplexMatrix trace_factor(const ComplexMatrix& rho, Register& reg, int wire) {
  const int pos = reg.position_of(wire);
  std::vector<int> keep;
  for (int f = 0; f < static_cast<int>(reg.dims.size()); ++f)
    if (f != pos) keep.push_back(f);
  ComplexMatrix out = partial_trace(rho, reg.dims, keep);
  reg.order.erase(reg.order.begin() + pos);
  reg.dims.erase(reg.dims.begin() + pos);
  return out;
}

bool condition_holds(const std::optional<Condition>& c, const Registers& regs) {
  if (!c) return true;
  const auto it = regs.find(c->reg);
  return it != regs.end() && it->second == c->value;
}

struct Engine {
  Register reg;
  std::map<Registers, ComplexMatrix> branches;

  void run(const Circuit& c) {
    for (const Element& e : c.elements()) std::visit([&](const auto& op) { step(op); }, e);
  }

  void apply_all(const std::vector<int>& wires, const std::vector<ComplexMatrix>& kraus,
                 const std::optional<Condition>& cond) {
    std::vector<int> new_dims = reg.dims;
    bool touched = false;
    for (auto& [regs, rho] : branches) {
      if (!condition_holds(cond, regs)) continue;
      rho = apply_local(rho, reg, wires, kraus, &new_dims);
      touched = true;
    }
    if (touched && new_dims != reg.dims) {
      if (branches.size() > 1) {
        for (auto& [regs, rho] : branches) {
          if (rho.rows() != product(new_dims)) {
            throw ShapeError("conditional dimension-changing channel leaves branches inconsistent");
          }
        }
      }
      reg.dims = new_dims;
    }
  }

  void step(const GateOp& g) { apply_all(g.wires, {g.unitary}, g.condition); }

  void step(const ChannelOp& c) {
    if (c.channel.dim_out() != c.channel.dim_in() && c.condition) {
      throw ConfigError("channel '" + c.name + "': dimension-changing channels cannot be conditional");
    }
    apply_all(c.wires, c.channel.kraus().operators, c.condition);
    if (product(reg.dims) > kMaxDimension) {
      throw ShapeError("simulation exceeds the 12-qubit dimension cap");
    }
  }

  void step(const MeasureOp& m) {
    const int d = reg.dims[reg.position_of(m.wire)];
    std::vector<ComplexMatrix> projectors = m.projectors;
    if (projectors.empty()) {
      for (int k = 0; k < d; ++k) {
        ComplexMatrix p = ComplexMatrix::Zero(d, d);
        p(k, k) = 1.0;
        projectors.push_back(std::move(p));
      }
    }
    std::map<Registers, ComplexMatrix> next;
    std::vector<int> unused;
    for (const auto& [regs, rho] : branches) {
      for (std::size_t k = 0; k < projectors.size(); ++k) {
        ComplexMatrix out = apply_local(rho, reg, {m.wire}, {projectors[k]}, &unused);
        if (out.trace().real() < kDropBranch) continue;
        Registers r = regs;
        r[m.reg] = static_cast<int>(k);
        auto it = next.find(r);
        if (it == next.end()) next.emplace(std::move(r), std::move(out));
        else it->second += out;
      }
    }
    branches = std::move(next);
  }

  void step(const ResetOp& r) {
    const int d = reg.dims[reg.position_of(r.wire)];
    apply_all({r.wire}, reset_channel(d).kraus().operators, std::nullopt);
  }

  void step(const TraceOutOp& t) {
    Register after = reg;
    for (auto& [regs, rho] : branches) {
      Register tmp = reg;
      rho = trace_factor(rho, tmp, t.wire);
      after = tmp;
    }
    reg = after;
  }
};

Engine start_engine(const Circuit& c, const ComplexMatrix& rho_data, bool with_reference) {
  c.validate();
  Engine eng;
  ComplexMatrix rho = rho_data;
  for (int w : c.data_wires()) {
    eng.reg.order.push_back(w);
    eng.reg.dims.push_back(c.wires()[w].dim);
  }
  if (with_reference) {
    eng.reg.order.push_back(kReference);
    eng.reg.dims.push_back(static_cast<int>(product(eng.reg.dims)));
  }
  for (int w : c.ancilla_wires()) {
    const int d = c.wires()[w].dim;
    ComplexMatrix zero = ComplexMatrix::Zero(d, d);
    zero(0, 0) = 1.0;
    rho = kron(rho, zero);
    eng.reg.order.push_back(w);
    eng.reg.dims.push_back(d);
  }
  if (rho.rows() != product(eng.reg.dims)) {
    throw ShapeError("input state dimension does not match the data wires");
  }
  if (rho.rows() > kMaxDimension) throw ShapeError("simulation exceeds the 12-qubit dimension cap");
  eng.branches.emplace(Registers{}, std::move(rho));
  return eng;
}

// Reorders every branch to [live data ascending, reference, live ancillas].
std::vector<int> canonical_order(const Circuit& c, const Register& reg) {
  std::vector<int> data, anc;
  int ref = -1;
  for (int f = 0; f < static_cast<int>(reg.order.size()); ++f) {
    const int w = reg.order[f];
    if (w == kReference) ref = f;
    else if (c.wires()[w].role == WireRole::data) data.push_back(f);
    else anc.push_back(f);
  }
  auto by_wire = [&](int a, int b) { return reg.order[a] < reg.order[b]; };
  std::sort(data.begin(), data.end(), by_wire);
  std::sort(anc.begin(), anc.end(), by_wire);
  std::vector<int> out = data;
  if (ref >= 0) out.push_back(ref);
  out.insert(out.end(), anc.begin(), anc.end());
  return out;
}

}  // namespace

DensityMatrix SimulationResult::mixed_state() const {
  if (branches.empty()) throw InvalidChannelError("simulation produced no branches");
  ComplexMatrix acc = ComplexMatrix::Zero(branches.front().state.rows(), branches.front().state.cols());
  for (const auto& b : branches) acc += b.probability * b.state;
  return DensityMatrix(hermitian_part(acc));
}

SimulationResult simulate_branches(const Circuit& c, const DensityMatrix& rho_in) {
  Engine eng = start_engine(c, rho_in.matrix(), false);
  eng.run(c);

  const std::vector<int> order = canonical_order(c, eng.reg);
  SimulationResult res;
  std::vector<int> data_positions;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int w = eng.reg.order[order[i]];
    if (c.wires()[w].role == WireRole::data) {
      res.output_wires.push_back(w);
      res.output_dims.push_back(eng.reg.dims[order[i]]);
      data_positions.push_back(static_cast<int>(i));
    }
  }
  std::vector<int> permuted_dims;
  for (int f : order) permuted_dims.push_back(eng.reg.dims[f]);
  for (const auto& [regs, rho] : eng.branches) {
    ComplexMatrix r = permute_subsystems(rho, eng.reg.dims, order);
    r = partial_trace(r, permuted_dims, data_positions);
    const double p = r.trace().real();
    res.branches.push_back(Branch{regs, p, r / p});
  }
  return res;
}

DensityMatrix simulate(const Circuit& c, const DensityMatrix& rho_in) {
  return simulate_branches(c, rho_in).mixed_state();
}

ProcessResult extract_channel(const Circuit& c) {
  int d_in = 1;
  for (int w : c.data_wires()) d_in *= c.wires()[w].dim;
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(d_in) * d_in);
  for (int i = 0; i < d_in; ++i) phi(static_cast<Eigen::Index>(i) * d_in + i) = 1.0 / std::sqrt(d_in);

  Engine eng = start_engine(c, phi * phi.adjoint(), true);
  eng.run(c);

  const std::vector<int> order = canonical_order(c, eng.reg);
  std::vector<int> permuted_dims;
  for (int f : order) permuted_dims.push_back(eng.reg.dims[f]);
  std::vector<int> system_positions;
  std::vector<int> ancilla_positions;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int w = eng.reg.order[order[i]];
    if (w == kReference || c.wires()[w].role == WireRole::data) system_positions.push_back(static_cast<int>(i));
    else ancilla_positions.push_back(static_cast<int>(i));
  }

  ProcessResult res{Channel::identity(1), {}};
  ComplexMatrix total;
  for (const auto& [regs, rho] : eng.branches) {
    ComplexMatrix r = permute_subsystems(rho, eng.reg.dims, order);
    res.branch_log.push_back(BranchRecord{regs, r.trace().real()});
    if (total.size() == 0) total = r;
    else total += r;
  }

  ComplexMatrix choi = partial_trace(total, permuted_dims, system_positions);
  if (!ancilla_positions.empty()) {
    const ComplexMatrix anc = partial_trace(total, permuted_dims, ancilla_positions);
    if (max_abs(total - kron(choi, anc)) > 1e-10) {
      throw ConfigError("extract_channel: live ancilla is entangled with the data at circuit end");
    }
  }
  int d_out = 1;
  for (std::size_t i = 0; i + 1 < system_positions.size(); ++i) d_out *= permuted_dims[system_positions[i]];
  res.channel = Channel::from_choi(hermitian_part(choi), d_in, d_out);
  return res;
}

// ---------------------------------------------------------------- library

double ad_theta(double gamma) { return 2.0 * std::asin(std::sqrt(gamma)); }

Circuit build_bitflip_circuit_a(double p) {
  Circuit c;
  c.add_wire("q0");
  const Channel ops[2] = {Channel::identity(2), Channel::unitary(gate_x())};
  const double probs[2] = {p, 1.0 - p};
  c.channel("stochastic_x", mix(ops, probs), {0}, true);
  return c;
}

Circuit build_bitflip_circuit_b(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidChannelError("build_bitflip_circuit_b: p outside [0, 1]");
  Circuit c;
  c.add_wire("q0");
  c.add_wire("a0", 2, WireRole::ancilla);
  c.named("ry", {2.0 * std::asin(std::sqrt(1.0 - p))}, {1});
  c.named("cnot", {}, {1, 0});
  c.trace_out(1);
  return c;
}

Circuit build_ad_circuit(double theta, AdVariant variant) {
  Circuit c;
  c.add_wire("q0");
  c.add_wire("a0", 2, WireRole::ancilla);
  c.named("cry", {theta}, {0, 1});
  if (variant == AdVariant::unitary_cnot) {
    c.named("cnot", {}, {1, 0});
  } else {
    c.measure(1, "m0");
    c.named("x", {}, {0}, Condition{"m0", 1});
  }
  c.trace_out(1);
  return c;
}

}  // namespace channelforge
