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

#include "channelforge/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"

namespace channelforge {
namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return require(j, key, where).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_as<T>(j, key, where);
}

std::vector<std::vector<double>> real_rows(const ComplexMatrix& m, bool imag) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r].push_back(imag ? m(r, c).imag() : m(r, c).real());
  return rows;
}

ComplexMatrix from_rows(const json& re, const json* im, const std::string& where) {
  try {
    const auto r = re.get<std::vector<std::vector<double>>>();
    const Eigen::Index rows = static_cast<Eigen::Index>(r.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(r.front().size()) : 0;
    ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (static_cast<Eigen::Index>(r[i].size()) != cols) throw ConfigError(where + ": ragged matrix rows");
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = r[i][k];
    }
    if (im) {
      const auto v = im->get<std::vector<std::vector<double>>>();
      if (static_cast<Eigen::Index>(v.size()) != rows) throw ConfigError(where + ": re/im shapes differ");
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(v[i].size()) != cols) throw ConfigError(where + ": re/im shapes differ");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) += Complex(0.0, v[i][k]);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

// One real parameter under any of the usual names.
double scalar_param(const json& j, const std::string& where) {
  for (const char* key : {"p", "q", "gamma", "value"}) {
    if (j.contains(key)) return get_as<double>(j, key, where);
  }
  throw ConfigError(where + ": missing parameter (p, q or gamma)");
}

std::optional<Condition> circuit_condition(const json& e, const std::string& where) {
  if (!e.contains("condition")) return std::nullopt;
  const json& c = e.at("condition");
  return Condition{get_as<std::string>(c, "reg", where + ".condition"), get_or<int>(c, "value", 1, where)};
}

std::optional<MessageCondition> message_condition(const json& e, const std::string& where) {
  if (!e.contains("condition")) return std::nullopt;
  const json& c = e.at("condition");
  return MessageCondition{get_as<std::string>(c, "message", where + ".condition"), get_or<int>(c, "value", 1, where)};
}

const std::set<std::string>& known_gates() {
  static const std::set<std::string> g = {"x", "y", "z", "h", "id", "ry", "cnot", "cx", "cry", "shift"};
  return g;
}

std::vector<double> gate_params(const json& e, const std::string& where) {
  if (e.contains("params")) return get_as<std::vector<double>>(e, "params", where);
  if (e.contains("theta")) return {get_as<double>(e, "theta", where)};
  if (e.contains("dim")) return {static_cast<double>(get_as<int>(e, "dim", where))};
  return {};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) { return {{"re", real_rows(m, false)}, {"im", real_rows(m, true)}}; }

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (j.is_array()) return from_rows(j, nullptr, where);
  const json& re = require(j, "re", where);
  return from_rows(re, j.contains("im") ? &j.at("im") : nullptr, where);
}

ComplexMatrix ket_from_json(const json& j, const std::string& where) {
  try {
    const json& re_j = j.is_array() ? j : require(j, "re", where);
    const auto re = re_j.get<std::vector<double>>();
    ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(re.size()), 1);
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i), 0) = re[i];
    if (j.is_object() && j.contains("im")) {
      const auto im = j.at("im").get<std::vector<double>>();
      if (im.size() != re.size()) throw ConfigError(where + ": re/im lengths differ");
      for (std::size_t i = 0; i < im.size(); ++i) v(static_cast<Eigen::Index>(i), 0) += Complex(0.0, im[i]);
    }
    return v;
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

json channel_to_json(const Channel& ch) {
  return {{"dim_in", ch.dim_in()},
          {"dim_out", ch.dim_out()},
          {"choi_re", real_rows(ch.choi(), false)},
          {"choi_im", real_rows(ch.choi(), true)},
          {"normalization", "trace1"}};
}

namespace {

ComplexMatrix serialized_choi(const json& j, int* din, int* dout) {
  const std::string where = "channel";
  *din = get_as<int>(j, "dim_in", where);
  *dout = get_as<int>(j, "dim_out", where);
  const std::string norm = get_or<std::string>(j, "normalization", "trace1", where);
  ComplexMatrix choi = from_rows(require(j, "choi_re", where), j.contains("choi_im") ? &j.at("choi_im") : nullptr,
                                 where);
  if (norm == "trace_din") {
    choi /= static_cast<double>(*din);
  } else if (norm != "trace1") {
    throw ConfigError("channel: unknown normalization '" + norm + "'");
  }
  return choi;
}

}  // namespace

Channel channel_from_json(const json& j) {
  int din = 0, dout = 0;
  ComplexMatrix choi = serialized_choi(j, &din, &dout);
  return Channel::from_choi(std::move(choi), din, dout);
}

Channel channel_from_json_unchecked(const json& j) {
  int din = 0, dout = 0;
  ComplexMatrix choi = serialized_choi(j, &din, &dout);
  return Channel::from_choi_unchecked(std::move(choi), din, dout);
}

Channel channel_from_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("channel spec: expected an object");
  if (j.contains("choi_re")) return channel_from_json(j);
  const std::string name = get_as<std::string>(j, "name", "channel spec");
  const std::string where = "channel '" + name + "'";
  if (name == "identity") return Channel::identity(get_or<int>(j, "dim", 2, where));
  if (name == "dephasing") return dephasing(scalar_param(j, where));
  if (name == "depolarizing") return depolarizing(scalar_param(j, where));
  if (name == "white_noise") return white_noise(scalar_param(j, where));
  if (name == "amplitude_damping") return amplitude_damping(scalar_param(j, where));
  if (name == "bit_flip") return bit_flip(scalar_param(j, where));
  if (name == "rotation_noise_b") return rotation_noise_b(scalar_param(j, where));
  if (name == "erasure") return erasure(scalar_param(j, where), get_or<int>(j, "dim", 2, where));
  if (name == "reset") return reset_channel(get_or<int>(j, "dim", 2, where));
  if (name == "pauli_diagonal") return pauli_diagonal(PauliDiagonalSpec{get_as<std::vector<double>>(j, "probs", where)});
  if (name == "unitary") return Channel::unitary(matrix_from_json(require(j, "matrix", where), where));
  if (name == "kraus") {
    KrausSet ks;
    for (const json& k : require(j, "operators", where)) ks.operators.push_back(matrix_from_json(k, where));
    return Channel::from_kraus(std::move(ks));
  }
  if (name == "compose") {
    const json& list = require(j, "channels", where);
    if (!list.is_array() || list.empty()) throw ConfigError(where + ": 'channels' must be a non-empty list");
    Channel acc = channel_from_spec(list.front());
    for (std::size_t i = 1; i < list.size(); ++i) acc = compose(channel_from_spec(list[i]), acc);
    return acc;
  }
  throw ConfigError("unknown channel name '" + name + "'");
}

NoiseModel noise_model_from_json(const json& j) {
  const std::string where = "noise model";
  const std::string kind = get_or<std::string>(j, "kind", "none", where);
  if (kind == "none") return NoiseModel::noiseless();
  const json& list = require(j, "channels", where);
  if (!list.is_array() || list.empty()) throw ConfigError(where + ": 'channels' must be a non-empty list");
  Channel acc = channel_from_spec(list.front());
  for (std::size_t i = 1; i < list.size(); ++i) acc = compose(channel_from_spec(list[i]), acc);
  NoiseModel nm;
  if (kind == "gate") {
    nm = NoiseModel::gate_model(acc, get_or<int>(j, "max_arity", 2, where));
  } else if (kind == "block") {
    nm = NoiseModel::block_model(acc);
  } else {
    throw ConfigError(where + ": unknown kind '" + kind + "'");
  }
  if (j.contains("measurement")) nm.measurement_noise = channel_from_spec(j.at("measurement"));
  nm.validate();
  return nm;
}

// ---------------------------------------------------------------- circuits

Circuit circuit_from_json(const json& j) {
  Circuit c;
  const json& wires = require(j, "wires", "circuit");
  for (std::size_t i = 0; i < wires.size(); ++i) {
    const std::string where = "wires[" + std::to_string(i) + "]";
    const std::string role = get_or<std::string>(wires[i], "role", "data", where);
    if (role != "data" && role != "ancilla") throw ConfigError(where + ": role must be data or ancilla");
    c.add_wire(get_or<std::string>(wires[i], "label", "w" + std::to_string(i), where),
               get_or<int>(wires[i], "dim", 2, where), role == "data" ? WireRole::data : WireRole::ancilla);
  }
  const json& elements = require(j, "elements", "circuit");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const json& e = elements[i];
    const std::string where = "elements[" + std::to_string(i) + "]";
    const std::string type = get_as<std::string>(e, "type", where);
    if (type == "gate" || known_gates().count(type)) {
      const std::string name = type == "gate" ? get_as<std::string>(e, "name", where) : type;
      if (!known_gates().count(name)) throw ConfigError(where + ": unknown gate '" + name + "'");
      c.named(name, gate_params(e, where), get_as<std::vector<int>>(e, "wires", where), circuit_condition(e, where));
    } else if (type == "unitary") {
      c.gate(get_or<std::string>(e, "name", "unitary", where), matrix_from_json(require(e, "matrix", where), where),
             get_as<std::vector<int>>(e, "wires", where), circuit_condition(e, where));
    } else if (type == "channel") {
      const json& spec = require(e, "channel", where);
      c.channel(get_or<std::string>(e, "name", spec.value("name", std::string("channel")), where),
                channel_from_spec(spec), get_as<std::vector<int>>(e, "wires", where),
                get_or<bool>(e, "hardware_op", false, where), circuit_condition(e, where));
    } else if (type == "measure") {
      std::vector<ComplexMatrix> projectors;
      if (e.contains("projectors")) {
        for (const json& p : e.at("projectors")) projectors.push_back(matrix_from_json(p, where));
      }
      c.measure(get_as<int>(e, "wire", where), get_as<std::string>(e, "reg", where), std::move(projectors));
    } else if (type == "reset") {
      c.reset(get_as<int>(e, "wire", where));
    } else if (type == "trace_out") {
      c.trace_out(get_as<int>(e, "wire", where));
    } else {
      throw ConfigError(where + ": unknown element type '" + type + "'");
    }
  }
  try {
    c.validate();
  } catch (const ShapeError& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
  return c;
}

json circuit_to_json(const Circuit& c) {
  json wires = json::array();
  for (const Wire& w : c.wires()) {
    wires.push_back({{"label", w.label}, {"dim", w.dim}, {"role", w.role == WireRole::data ? "data" : "ancilla"}});
  }
  json elements = json::array();
  const auto with_condition = [](json e, const std::optional<Condition>& cond) {
    if (cond) e["condition"] = {{"reg", cond->reg}, {"value", cond->value}};
    return e;
  };
  for (const Element& el : c.elements()) {
    if (const auto* g = std::get_if<GateOp>(&el)) {
      if (known_gates().count(g->name)) {
        elements.push_back(
            with_condition({{"type", "gate"}, {"name", g->name}, {"params", g->params}, {"wires", g->wires}}, g->condition));
      } else {
        elements.push_back(with_condition(
            {{"type", "unitary"}, {"name", g->name}, {"matrix", matrix_to_json(g->unitary)}, {"wires", g->wires}},
            g->condition));
      }
    } else if (const auto* ch = std::get_if<ChannelOp>(&el)) {
      elements.push_back(with_condition({{"type", "channel"},
                                         {"name", ch->name},
                                         {"channel", channel_to_json(ch->channel)},
                                         {"wires", ch->wires},
                                         {"hardware_op", ch->hardware_op}},
                                        ch->condition));
    } else if (const auto* m = std::get_if<MeasureOp>(&el)) {
      json e = {{"type", "measure"}, {"wire", m->wire}, {"reg", m->reg}};
      if (!m->projectors.empty()) {
        e["projectors"] = json::array();
        for (const auto& p : m->projectors) e["projectors"].push_back(matrix_to_json(p));
      }
      elements.push_back(std::move(e));
    } else if (const auto* r = std::get_if<ResetOp>(&el)) {
      elements.push_back({{"type", "reset"}, {"wire", r->wire}});
    } else if (const auto* t = std::get_if<TraceOutOp>(&el)) {
      elements.push_back({{"type", "trace_out"}, {"wire", t->wire}});
    }
  }
  return {{"wires", wires}, {"elements", elements}};
}

// --------------------------------------------------------------- scenarios

namespace {

ComplexMatrix state_target(const json& q, const std::string& where) {
  if (q.contains("ket")) return ket_from_json(q.at("ket"), where + ".ket");
  if (q.contains("density")) return matrix_from_json(q.at("density"), where + ".density");
  if (q.contains("bell")) {
    const std::string b = get_as<std::string>(q, "bell", where);
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix v = ComplexMatrix::Zero(4, 1);
    if (b == "phi+") { v(0, 0) = s; v(3, 0) = s; }
    else if (b == "phi-") { v(0, 0) = s; v(3, 0) = -s; }
    else if (b == "psi+") { v(1, 0) = s; v(2, 0) = s; }
    else if (b == "psi-") { v(1, 0) = s; v(2, 0) = -s; }
    else throw ConfigError(where + ": unknown Bell state '" + b + "'");
    return v;
  }
  throw ConfigError(where + ": target needs 'ket', 'density' or 'bell'");
}

}  // namespace

NetworkScenario scenario_from_json(const json& j) {
  NetworkScenario s;
  if (!j.is_object()) throw ConfigError("scenario: expected an object");
  if (j.contains("nodes")) {
    try {
      s.nodes = j.at("nodes").get<std::map<std::string, std::vector<std::string>>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("scenario.nodes: ") + e.what());
    }
  }
  const json events = j.value("events", json::array());
  for (std::size_t i = 0; i < events.size(); ++i) {
    const json& e = events[i];
    const std::string where = "events[" + std::to_string(i) + "]";
    NetworkEvent ev;
    ev.time = get_or<double>(e, "time", 0.0, where);
    const std::string type = get_as<std::string>(e, "type", where);
    if (type == "add_registers") {
      AddRegistersEvent a;
      a.registers = get_as<std::vector<std::string>>(e, "registers", where);
      a.dims = get_or<std::vector<int>>(e, "dims", {}, where);
      if (e.contains("state")) a.state = state_target(e.at("state"), where + ".state");
      ev.body = std::move(a);
    } else if (type == "gate") {
      GateEvent g;
      g.name = get_or<std::string>(e, "name", "unitary", where);
      g.params = gate_params(e, where);
      if (e.contains("matrix")) g.unitary = matrix_from_json(e.at("matrix"), where);
      else if (!known_gates().count(g.name)) throw ConfigError(where + ": unknown gate '" + g.name + "'");
      g.registers = get_as<std::vector<std::string>>(e, "registers", where);
      g.condition = message_condition(e, where);
      ev.body = std::move(g);
    } else if (type == "channel") {
      const json& spec = require(e, "channel", where);
      ChannelEvent c{get_or<std::string>(e, "name", spec.value("name", std::string("channel")), where),
                     channel_from_spec(spec), get_as<std::vector<std::string>>(e, "registers", where),
                     message_condition(e, where)};
      ev.body = std::move(c);
    } else if (type == "measure") {
      ev.body = MeasureEvent{get_as<std::string>(e, "register", where), get_as<std::string>(e, "message", where)};
    } else if (type == "remove_registers") {
      ev.body = RemoveRegistersEvent{get_as<std::vector<std::string>>(e, "registers", where)};
    } else {
      throw ConfigError(where + ": unknown event type '" + type + "'");
    }
    s.events.push_back(std::move(ev));
  }
  const json reports = j.value("reports", json::object());
  const json fids = reports.value("fidelities", json::array());
  for (std::size_t i = 0; i < fids.size(); ++i) {
    const std::string where = "reports.fidelities[" + std::to_string(i) + "]";
    s.fidelities.push_back({get_as<std::string>(fids[i], "name", where),
                            get_as<std::vector<std::string>>(fids[i], "registers", where),
                            state_target(fids[i], where)});
  }
  const json states = reports.value("states", json::array());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string where = "reports.states[" + std::to_string(i) + "]";
    s.states.push_back({get_as<std::string>(states[i], "name", where),
                        get_as<std::vector<std::string>>(states[i], "registers", where)});
  }
  return s;
}

json report_to_json(const NetworkReport& r) {
  json states = json::object();
  for (const auto& [name, m] : r.states) states[name] = matrix_to_json(m);
  json log = json::array();
  for (const auto& rec : r.message_log) log.push_back({{"messages", rec.messages}, {"probability", rec.probability}});
  return {{"fidelities", r.fidelities},
          {"states", states},
          {"live_registers", r.live_registers},
          {"messages", log},
          {"trace", r.trace},
          {"events_applied", r.events_applied}};
}

// ------------------------------------------------------------------ export

json dilation_to_json(const StinespringDilation& d) {
  return {{"kind", "stinespring"},
          {"dim_in", d.dim_in},
          {"dim_out", d.dim_out},
          {"ancilla_dim", d.ancilla_dim},
          {"overhead", d.overhead()},
          {"unitary", matrix_to_json(d.unitary)}};
}

json routine_to_json(const QuditRoutine& r) {
  json ranges = json::array();
  json corrections = json::array();
  for (std::size_t i = 0; i < r.block_start.size(); ++i) {
    ranges.push_back({r.block_start[i], r.block_start[i] + r.branch_ranks[i]});
  }
  for (const auto& c : r.corrections) corrections.push_back(matrix_to_json(c));
  return {{"kind", "extended_qudit"},
          {"total_dim", r.total_dim},
          {"data_dim", r.data_dim},
          {"overhead", qudit_overhead(r)},
          {"unitary", matrix_to_json(r.unitary)},
          {"projector_ranges", ranges},
          {"kraus_index", r.kraus_index},
          {"corrections", corrections}};
}

json recipe_to_json(const TailoringRecipe& r) {
  static const char* names[] = {"building_block", "tailored_circuit", "black_box"};
  json out = {{"method", names[static_cast<int>(r.method)]},
              {"achieved_fidelity", r.achieved_fidelity},
              {"direct_fidelity", r.direct_fidelity},
              {"converged", r.converged},
              {"evaluations", r.evaluations},
              {"settings", r.settings}};
  if (!r.probs.empty()) out["probs"] = r.probs;
  if (!r.circuit_params.empty()) out["circuit_params"] = r.circuit_params;
  if (!r.param_vector.empty()) out["param_vector"] = r.param_vector;
  const auto blocks = [](const std::vector<Channel>& chs, const std::vector<bool>& dec) {
    json a = json::array();
    for (std::size_t i = 0; i < chs.size(); ++i) {
      a.push_back({{"channel", channel_to_json(chs[i])}, {"hardware_noise", static_cast<bool>(dec[i])}});
    }
    return a;
  };
  if (!r.pre_channels.empty()) out["pre_channels"] = blocks(r.pre_channels, r.pre_decorated);
  if (!r.post_channels.empty()) out["post_channels"] = blocks(r.post_channels, r.post_decorated);
  return out;
}

json resources_to_json(const ResourceEstimate& r) {
  return {{"n", r.n}, {"m", r.m}, {"k", r.k}, {"active_qubits", r.active_qubits}, {"qubits_required", r.qubits_required}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace channelforge
