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

#include "channelforge/netsim.hpp"

#include <algorithm>
#include <set>

#include "channelforge/circuit.hpp"
#include "channelforge/errors.hpp"

namespace channelforge {
namespace {

std::string event_label(std::size_t i) { return "event " + std::to_string(i); }

struct Layout {
  std::vector<std::string> names;
  std::vector<int> dims;

  int index_of(const std::string& r) const {
    const auto it = std::find(names.begin(), names.end(), r);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  }
  std::int64_t total() const {
    std::int64_t t = 1;
    for (int d : dims) t *= d;
    return t;
  }
  std::vector<int> positions(const std::vector<std::string>& regs, const std::string& where) const {
    std::vector<int> out;
    for (const auto& r : regs) {
      const int p = index_of(r);
      if (p < 0) throw ConfigError(where + ": register '" + r + "' is not live");
      if (std::find(out.begin(), out.end(), p) != out.end()) {
        throw ConfigError(where + ": register '" + r + "' listed twice");
      }
      out.push_back(p);
    }
    return out;
  }
  std::int64_t dim_of(const std::vector<int>& pos) const {
    std::int64_t d = 1;
    for (int p : pos) d *= dims[p];
    return d;
  }
};

ComplexMatrix initial_state(const AddRegistersEvent& e, std::int64_t dim, const std::string& where) {
  if (!e.state) {
    ComplexMatrix r = ComplexMatrix::Zero(dim, dim);
    r(0, 0) = 1.0;
    return r;
  }
  const ComplexMatrix& s = *e.state;
  if (s.cols() == 1 && s.rows() == dim) {
    const double n = s.norm();
    if (std::abs(n - 1.0) > kStateTol) throw ConfigError(where + ": initial ket is not normalized");
    return s * s.adjoint();
  }
  if (s.rows() != dim || s.cols() != dim) throw ConfigError(where + ": initial state has the wrong dimension");
  return DensityMatrix(s).matrix();
}

ComplexMatrix gate_unitary(const GateEvent& g) {
  return g.unitary ? *g.unitary : named_gate(g.name, g.params);
}

ComplexMatrix target_density(const ComplexMatrix& t) {
  return t.cols() == 1 ? ComplexMatrix(t * t.adjoint() / t.squaredNorm()) : t;
}

struct NetBranch {
  std::map<std::string, int> messages;
  ComplexMatrix rho;  // unnormalized; trace is the branch probability
};

constexpr double kDropBranch = 1e-15;

bool holds(const std::optional<MessageCondition>& c, const std::map<std::string, int>& msgs) {
  if (!c) return true;
  const auto it = msgs.find(c->message);
  return it != msgs.end() && it->second == c->value;
}

ComplexMatrix reduced_state(const ComplexMatrix& rho, const Layout& l, const std::vector<int>& pos) {
  std::vector<int> keep = pos;
  std::sort(keep.begin(), keep.end());
  const ComplexMatrix r = partial_trace(rho, l.dims, keep);
  std::vector<int> kdims, order;
  for (int k : keep) kdims.push_back(l.dims[k]);
  for (int p : pos) order.push_back(static_cast<int>(std::find(keep.begin(), keep.end(), p) - keep.begin()));
  return permute_subsystems(r, kdims, order);
}

}  // namespace

std::vector<NetworkEvent> NetworkScenario::ordered_events() const {
  std::vector<NetworkEvent> out = events;
  std::stable_sort(out.begin(), out.end(),
                   [](const NetworkEvent& a, const NetworkEvent& b) { return a.time < b.time; });
  return out;
}

void NetworkScenario::validate() const {
  std::set<std::string> known;
  for (const auto& [node, regs] : nodes) {
    for (const auto& r : regs) {
      if (!known.insert(r).second) throw ConfigError("node '" + node + "': register '" + r + "' owned twice");
    }
  }
  Layout l;
  std::set<std::string> sent;
  const auto check_condition = [&](const std::optional<MessageCondition>& c, const std::string& where) {
    if (c && !sent.count(c->message)) {
      throw ConfigError(where + ": condition on message '" + c->message + "' that was not received earlier");
    }
  };
  const std::vector<NetworkEvent> ev = ordered_events();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const std::string where = event_label(i);
    if (const auto* a = std::get_if<AddRegistersEvent>(&ev[i].body)) {
      if (a->registers.empty()) throw ConfigError(where + ": no registers to add");
      if (!a->dims.empty() && a->dims.size() != a->registers.size()) {
        throw ConfigError(where + ": dims and registers differ in length");
      }
      for (std::size_t k = 0; k < a->registers.size(); ++k) {
        const std::string& r = a->registers[k];
        if (l.index_of(r) >= 0) throw ConfigError(where + ": register '" + r + "' is already live");
        if (!nodes.empty() && !known.count(r)) throw ConfigError(where + ": register '" + r + "' belongs to no node");
        const int d = a->dims.empty() ? 2 : a->dims[k];
        if (d < 1) throw ConfigError(where + ": register dimension must be positive");
        l.names.push_back(r);
        l.dims.push_back(d);
      }
      if (l.total() > kNetworkMaxDimension) {
        throw ConfigError(where + ": live dimension " + std::to_string(l.total()) + " exceeds the engine cap of " +
                          std::to_string(kNetworkMaxDimension));
      }
    } else if (const auto* g = std::get_if<GateEvent>(&ev[i].body)) {
      const std::vector<int> pos = l.positions(g->registers, where);
      check_condition(g->condition, where);
      const ComplexMatrix u = gate_unitary(*g);
      if (u.rows() != l.dim_of(pos) || !is_unitary(u, 1e-10)) {
        throw ConfigError(where + ": gate '" + g->name + "' does not match its registers");
      }
    } else if (const auto* c = std::get_if<ChannelEvent>(&ev[i].body)) {
      const std::vector<int> pos = l.positions(c->registers, where);
      check_condition(c->condition, where);
      if (c->channel.dim_in() != l.dim_of(pos) || c->channel.dim_out() != c->channel.dim_in()) {
        throw ConfigError(where + ": channel '" + c->name + "' does not match its registers");
      }
    } else if (const auto* m = std::get_if<MeasureEvent>(&ev[i].body)) {
      l.positions({m->reg}, where);
      if (m->message.empty()) throw ConfigError(where + ": measurement needs a message name");
      sent.insert(m->message);
    } else if (const auto* r = std::get_if<RemoveRegistersEvent>(&ev[i].body)) {
      std::vector<int> pos = l.positions(r->registers, where);
      std::sort(pos.rbegin(), pos.rend());
      for (int p : pos) {
        l.names.erase(l.names.begin() + p);
        l.dims.erase(l.dims.begin() + p);
      }
    }
  }
  for (const auto& q : fidelities) {
    const std::vector<int> pos = l.positions(q.registers, "fidelity query '" + q.name + "'");
    const std::int64_t d = l.dim_of(pos);
    if (q.target.rows() != d || (q.target.cols() != 1 && q.target.cols() != d)) {
      throw ConfigError("fidelity query '" + q.name + "': target has the wrong dimension");
    }
  }
  for (const auto& q : states) l.positions(q.registers, "state query '" + q.name + "'");
}

NetworkReport run_scenario(const NetworkScenario& s) {
  s.validate();
  Layout l;
  std::vector<NetBranch> branches{{{}, ComplexMatrix::Identity(1, 1)}};
  NetworkReport report;
  for (const NetworkEvent& e : s.ordered_events()) {
    if (const auto* a = std::get_if<AddRegistersEvent>(&e.body)) {
      std::int64_t d = 1;
      for (std::size_t k = 0; k < a->registers.size(); ++k) {
        const int dk = a->dims.empty() ? 2 : a->dims[k];
        l.names.push_back(a->registers[k]);
        l.dims.push_back(dk);
        d *= dk;
      }
      const ComplexMatrix init = initial_state(*a, d, "add_registers");
      for (auto& b : branches) b.rho = kron(b.rho, init);
    } else if (const auto* g = std::get_if<GateEvent>(&e.body)) {
      const std::vector<int> pos = l.positions(g->registers, g->name);
      const ComplexMatrix ops[1] = {gate_unitary(*g)};
      for (auto& b : branches)
        if (holds(g->condition, b.messages)) b.rho = apply_on_subsystems(b.rho, l.dims, pos, ops);
    } else if (const auto* c = std::get_if<ChannelEvent>(&e.body)) {
      const std::vector<int> pos = l.positions(c->registers, c->name);
      const KrausSet& ks = c->channel.kraus();
      for (auto& b : branches)
        if (holds(c->condition, b.messages)) b.rho = apply_on_subsystems(b.rho, l.dims, pos, ks.operators);
    } else if (const auto* m = std::get_if<MeasureEvent>(&e.body)) {
      const std::vector<int> pos = l.positions({m->reg}, m->reg);
      const int d = l.dims[pos.front()];
      std::vector<NetBranch> next;
      for (const auto& b : branches) {
        for (int k = 0; k < d; ++k) {
          ComplexMatrix proj = ComplexMatrix::Zero(d, d);
          proj(k, k) = 1.0;
          const ComplexMatrix ops[1] = {proj};
          NetBranch nb{b.messages, apply_on_subsystems(b.rho, l.dims, pos, ops)};
          if (nb.rho.trace().real() <= kDropBranch) continue;
          nb.messages[m->message] = k;
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
    } else if (const auto* r = std::get_if<RemoveRegistersEvent>(&e.body)) {
      std::vector<int> pos = l.positions(r->registers, "remove_registers");
      std::vector<int> keep;
      for (int f = 0; f < static_cast<int>(l.dims.size()); ++f)
        if (std::find(pos.begin(), pos.end(), f) == pos.end()) keep.push_back(f);
      for (auto& b : branches) b.rho = partial_trace(b.rho, l.dims, keep);
      std::sort(pos.rbegin(), pos.rend());
      for (int p : pos) {
        l.names.erase(l.names.begin() + p);
        l.dims.erase(l.dims.begin() + p);
      }
    }
    ++report.events_applied;
  }

  const std::int64_t dim = l.total();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (const auto& b : branches) {
    rho += b.rho;
    report.message_log.push_back({b.messages, b.rho.trace().real()});
  }
  rho = hermitian_part(rho);
  report.trace = rho.trace().real();
  report.live_registers = l.names;
  for (const auto& q : s.fidelities) {
    const ComplexMatrix red = reduced_state(rho, l, l.positions(q.registers, q.name));
    const ComplexMatrix t = target_density(q.target);
    report.fidelities[q.name] =
        q.target.cols() == 1 ? (q.target.adjoint() * red * q.target)(0, 0).real() / q.target.squaredNorm()
                             : uhlmann_fidelity(red, t);
  }
  for (const auto& q : s.states) report.states[q.name] = reduced_state(rho, l, l.positions(q.registers, q.name));
  return report;
}

ResourceEstimate resource_estimate(int n, int m, int k) {
  if (n < 1 || m < 1 || k < 1) throw ConfigError("resource_estimate: n, m and k must be positive");
  ResourceEstimate r{n, m, k, 0, 0};
  r.active_qubits = static_cast<std::int64_t>(n) * m;
  r.qubits_required = 2 * static_cast<std::int64_t>(k) * r.active_qubits;
  return r;
}

}  // namespace channelforge
