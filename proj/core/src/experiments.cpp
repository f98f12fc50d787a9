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

#include "channelforge/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"
#include "channelforge/noise_model.hpp"
#include "channelforge/tailor.hpp"

namespace channelforge {
namespace {

// Rows are computed independently and stored by index, so the output does
// not depend on the number of workers.
std::vector<std::vector<double>> parallel_rows(std::size_t n, int jobs,
                                               const std::function<std::vector<double>(std::size_t)>& fn) {
  std::vector<std::vector<double>> rows(n);
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) rows[i] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

MultiStartOptions search_options(const SweepOptions& opt) {
  MultiStartOptions ms;
  ms.restarts = opt.restarts;
  ms.seed = opt.seed;
  ms.local.max_evaluations = opt.max_evaluations;
  return ms;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Channel depolarize_then_dephase(double q) { return compose(dephasing(q), depolarizing(q)); }

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
  }
  return os.str();
}

nlohmann::json Table::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
    out.push_back(std::move(obj));
  }
  return out;
}

double Table::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == column) return rows.at(row).at(c);
  throw std::out_of_range("Table: no column '" + column + "'");
}

std::vector<double> linspace_step(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("linspace_step: need step > 0 and hi >= lo");
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  for (int k = 0; k <= n; ++k) out.push_back(lo + step * k);
  if (hi - out.back() > 1e-9 * std::max(1.0, std::abs(hi))) out.push_back(hi);
  else out.back() = hi;
  return out;
}

// ---------------------------------------------------------------- fig 5

Table fig5a(const std::vector<double>& qs, const SweepOptions& opt, double target_p) {
  const Channel target = bit_flip(target_p);
  Table t;
  t.columns = {"target_p", "q", "infidelity_direct", "infidelity_noisy_blocks", "infidelity_noiseless_blocks"};
  t.rows = parallel_rows(qs.size(), opt.jobs, [&](std::size_t i) {
    const Channel b = rotation_noise_b(qs[i]);
    const NoiseModel hw = NoiseModel::block_model(b);
    const Channel input = compose(b, target);
    BuildingBlockConfig cfg;
    cfg.placement = Placement::interleaved;
    cfg.search = search_options(opt);
    const TailoringRecipe noisy = building_block_optimize(target, input, hw, cfg);
    cfg.noisy_blocks = false;
    const TailoringRecipe clean = building_block_optimize(target, input, hw, cfg, noisy);
    return std::vector<double>{target_p, qs[i], 1.0 - noisy.direct_fidelity, 1.0 - noisy.achieved_fidelity,
                               1.0 - clean.achieved_fidelity};
  });
  return t;
}

Table fig5b(const std::vector<double>& target_ps, const SweepOptions& opt, double gamma, double hw_q) {
  const Channel b = depolarizing(hw_q);
  const NoiseModel hw = NoiseModel::block_model(b);
  const Channel input = compose(b, amplitude_damping(gamma));
  Table t;
  t.columns = {"gamma", "hw_q", "target_p", "infidelity_direct", "infidelity_noisy_blocks",
               "infidelity_noiseless_blocks"};
  t.rows = parallel_rows(target_ps.size(), opt.jobs, [&](std::size_t i) {
    const Channel target = depolarizing(target_ps[i]);
    BuildingBlockConfig cfg;
    cfg.placement = Placement::interleaved;
    cfg.search = search_options(opt);
    const TailoringRecipe noisy = building_block_optimize(target, input, hw, cfg);
    cfg.noisy_blocks = false;
    const TailoringRecipe clean = building_block_optimize(target, input, hw, cfg, noisy);
    return std::vector<double>{gamma, hw_q, target_ps[i], 1.0 - noisy.direct_fidelity,
                               1.0 - noisy.achieved_fidelity, 1.0 - clean.achieved_fidelity};
  });
  return t;
}

// ---------------------------------------------------------------- fig 6

Table fig6a(const std::vector<double>& gammas, double hw_q, AdVariant variant) {
  const NoiseModel hw = NoiseModel::gate_model(depolarize_then_dephase(hw_q));
  Table t;
  t.columns = {"gamma", "hw_q", "theta_ideal", "theta_opt", "fidelity_ideal", "fidelity_opt"};
  for (double g : gammas) {
    ThetaTailorConfig cfg;
    cfg.reference_theta = ad_theta(g);
    const TailoringRecipe r = theta_tailor(
        amplitude_damping(g), [variant](double th) { return build_ad_circuit(th, variant); }, hw, cfg);
    t.rows.push_back({g, hw_q, *cfg.reference_theta, r.circuit_params.at("theta"), r.direct_fidelity,
                      r.achieved_fidelity});
  }
  return t;
}

Table fig6b(const std::vector<double>& gammas, const SweepOptions& opt, double hw_q) {
  const NoiseModel hw = NoiseModel::block_model(depolarize_then_dephase(hw_q));
  Table t;
  t.columns = {"gamma", "hw_q", "theta_opt", "infidelity_direct", "infidelity_theta", "infidelity_full"};
  t.rows = parallel_rows(gammas.size(), opt.jobs, [&](std::size_t i) {
    const double g = gammas[i];
    const Channel target = amplitude_damping(g);
    ThetaTailorConfig tc;
    tc.reference_theta = ad_theta(g);
    const TailoringRecipe th =
        theta_tailor(target, [](double x) { return build_ad_circuit(x); }, hw, tc);
    FullCircuitConfig fc;
    fc.search = search_options(opt);
    const TailoringRecipe full =
        full_circuit_tailor(target, ad_full_template(th.circuit_params.at("theta")), hw, fc);
    return std::vector<double>{g, hw_q, th.circuit_params.at("theta"), 1.0 - th.direct_fidelity,
                               1.0 - th.achieved_fidelity, 1.0 - full.achieved_fidelity};
  });
  return t;
}

namespace {

std::vector<double> square_weights(const RealVector& x) {
  std::vector<double> w(static_cast<std::size_t>(x.size()));
  const double total = x.squaredNorm();
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    w[static_cast<std::size_t>(k)] = total > 0.0 ? x(k) * x(k) / total : 1.0 / static_cast<double>(x.size());
  }
  return w;
}

Circuit single_channel_circuit(const std::string& name, const Channel& ch) {
  Circuit c;
  c.add_wire("q0");
  c.channel(name, ch, {0});
  return c;
}

}  // namespace

Table fig6c(const std::vector<double>& target_ps, const SweepOptions& opt, double hw_q, double hw_gamma) {
  const NoiseModel hw = NoiseModel::block_model(compose(amplitude_damping(hw_gamma), dephasing(hw_q)));
  const CptpParameterization param{2, 4};
  Table t;
  t.columns = {"target_p", "hw_q", "hw_gamma", "infidelity_direct", "infidelity_pauli", "infidelity_full"};
  t.rows = parallel_rows(target_ps.size(), opt.jobs, [&](std::size_t i) {
    const PauliDiagonalSpec spec = PauliDiagonalSpec::depolarizing(target_ps[i]);
    const Channel target = pauli_diagonal(spec);

    ParametricTemplate pauli_tmpl;
    pauli_tmpl.names = {"w_i", "w_x", "w_y", "w_z"};
    pauli_tmpl.defaults = RealVector(4);
    for (int k = 0; k < 4; ++k) pauli_tmpl.defaults(k) = std::sqrt(spec.probs[static_cast<std::size_t>(k)]);
    pauli_tmpl.build = [](const RealVector& x) {
      return single_channel_circuit("pauli_mixture", pauli_diagonal(PauliDiagonalSpec{square_weights(x)}));
    };
    FullCircuitConfig fc;
    fc.search = search_options(opt);
    const TailoringRecipe mix = full_circuit_tailor(target, pauli_tmpl, hw, fc);

    ParametricTemplate full_tmpl;
    const RealVector w = Eigen::Map<const RealVector>(mix.param_vector.data(), 4);
    KrausSet seed;
    const std::vector<double> lambda = square_weights(w);
    for (int k = 0; k < 4; ++k) seed.operators.push_back(std::sqrt(lambda[static_cast<std::size_t>(k)]) * pauli(k));
    full_tmpl.defaults = param.encode(seed);
    for (int k = 0; k < param.num_params(); ++k) full_tmpl.names.push_back("v" + std::to_string(k));
    full_tmpl.build = [param](const RealVector& x) {
      return single_channel_circuit("isometry", Channel::from_kraus(param.decode(x)));
    };
    const TailoringRecipe full = full_circuit_tailor(target, full_tmpl, hw, fc);
    return std::vector<double>{target_ps[i], hw_q, hw_gamma, 1.0 - mix.direct_fidelity,
                               1.0 - mix.achieved_fidelity, 1.0 - full.achieved_fidelity};
  });
  return t;
}

// ---------------------------------------------------------------- fig 7

double bitflip_fidelity_a(double target_P, double p, double q) {
  const NoiseModel nm = NoiseModel::gate_model(white_noise(q));
  return choi_fidelity(extract_channel(apply_noise_model(build_bitflip_circuit_a(p), nm)).channel,
                       bit_flip(target_P));
}

double bitflip_fidelity_b(double target_P, double p, double q) {
  const NoiseModel nm = NoiseModel::gate_model(white_noise(q));
  return choi_fidelity(extract_channel(apply_noise_model(build_bitflip_circuit_b(p), nm)).channel,
                       bit_flip(target_P));
}

Table fig7c(const std::vector<double>& Ps, const std::vector<double>& qs, int jobs) {
  Table t;
  t.columns = {"P", "q", "p_best_a", "fidelity_best_a", "p_best_b", "fidelity_best_b"};
  t.rows = parallel_rows(Ps.size() * qs.size(), jobs, [&](std::size_t i) {
    const double P = Ps[i / qs.size()];
    const double q = qs[i % qs.size()];
    const ScalarResult a = grid_brent_minimize([&](double p) { return -bitflip_fidelity_a(P, p, q); }, 0.0, 1.0, 21);
    const ScalarResult b = grid_brent_minimize([&](double p) { return -bitflip_fidelity_b(P, p, q); }, 0.0, 1.0, 21);
    return std::vector<double>{P, q, a.x, -a.value, b.x, -b.value};
  });
  return t;
}

}  // namespace channelforge
