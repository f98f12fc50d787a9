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

#include "channelforge/noise_model.hpp"

#include <algorithm>
#include <string>

#include "channelforge/errors.hpp"

namespace channelforge {

NoiseModel NoiseModel::noiseless() { return NoiseModel{}; }

NoiseModel NoiseModel::gate_model(const Channel& per_wire, int max_arity) {
  NoiseModel nm;
  nm.kind = NoiseKind::gate;
  for (int k = 1; k <= max_arity; ++k) nm.gate_noise[k] = std::vector<Channel>(k, per_wire);
  return nm;
}

NoiseModel NoiseModel::block_model(const Channel& trailing) {
  NoiseModel nm;
  nm.kind = NoiseKind::block;
  nm.trailing_noise = trailing;
  return nm;
}

void NoiseModel::validate() const {
  auto check = [](const Channel& ch, const std::string& where) {
    if (!validate_cptp(ch).passed()) throw InvalidChannelError("noise model: " + where + " is not CPTP");
  };
  for (const auto& [arity, list] : gate_noise) {
    if (static_cast<int>(list.size()) != arity) {
      throw ConfigError("noise model: arity " + std::to_string(arity) + " needs one channel per wire");
    }
    for (const auto& ch : list) check(ch, "gate noise");
  }
  if (trailing_noise) check(*trailing_noise, "trailing noise");
  if (measurement_noise) check(*measurement_noise, "measurement noise");
  if (kind == NoiseKind::block && !trailing_noise) {
    throw ConfigError("noise model: block model without a trailing channel");
  }
}

namespace {

const std::vector<Channel>& noise_for(const NoiseModel& nm, int arity, const std::string& name) {
  const auto it = nm.gate_noise.find(arity);
  if (it == nm.gate_noise.end()) {
    throw ConfigError("noise model has no entry for arity " + std::to_string(arity) +
                      " required by '" + name + "'");
  }
  return it->second;
}

void append_after(Circuit& out, const std::vector<int>& wires, const std::vector<Channel>& noise,
                  const std::optional<Condition>& cond) {
  std::vector<std::size_t> idx(wires.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return wires[a] < wires[b]; });
  for (std::size_t i : idx) out.channel("gate_noise", noise[i], {wires[i]}, false, cond);
}

}  // namespace

Circuit apply_noise_model(const Circuit& c, const NoiseModel& nm) {
  Circuit out(c.wires());
  if (nm.kind == NoiseKind::none) {
    for (const auto& e : c.elements()) out.append(e);
    return out;
  }
  if (nm.kind == NoiseKind::block) {
    if (!nm.trailing_noise) throw ConfigError("noise model: block model without a trailing channel");
    for (const auto& e : c.elements()) out.append(e);
    std::vector<int> data;
    std::vector<bool> live(c.wires().size(), true);
    for (const auto& e : c.elements())
      if (const auto* t = std::get_if<TraceOutOp>(&e)) live[t->wire] = false;
    int joint = 1;
    for (int w : c.data_wires()) {
      if (live[w]) {
        data.push_back(w);
        joint *= c.wires()[w].dim;
      }
    }
    if (data.empty()) return out;
    const Channel& tn = *nm.trailing_noise;
    if (data.size() > 1 && tn.dim_in() == joint && tn.dim_in() != c.wires()[data.front()].dim) {
      out.channel("block_noise", tn, data);
    } else {
      for (int w : data) out.channel("block_noise", tn, {w});
    }
    return out;
  }

  for (const auto& e : c.elements()) {
    if (const auto* m = std::get_if<MeasureOp>(&e)) {
      const Channel& pre = nm.measurement_noise ? *nm.measurement_noise
                                                : noise_for(nm, 1, "measure " + m->reg).front();
      out.channel("measurement_noise", pre, {m->wire});
      out.append(e);
    } else if (const auto* g = std::get_if<GateOp>(&e)) {
      out.append(e);
      append_after(out, g->wires, noise_for(nm, static_cast<int>(g->wires.size()), g->name), g->condition);
    } else if (const auto* ch = std::get_if<ChannelOp>(&e); ch && ch->hardware_op) {
      out.append(e);
      append_after(out, ch->wires, noise_for(nm, static_cast<int>(ch->wires.size()), ch->name),
                   ch->condition);
    } else {
      out.append(e);
    }
  }
  return out;
}

int count_noise_insertions(const Circuit& c, const NoiseModel& nm) {
  return static_cast<int>(apply_noise_model(c, nm).elements().size() - c.elements().size());
}

}  // namespace channelforge
