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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "channelforge/channel.hpp"
#include "channelforge/circuit.hpp"
#include "channelforge/dilation.hpp"
#include "channelforge/experiments.hpp"
#include "channelforge/netsim.hpp"
#include "channelforge/noise.hpp"
#include "channelforge/noise_model.hpp"
#include "channelforge/tailor.hpp"
#include "oracles.hpp"

using namespace channelforge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " [runtime over " + std::to_string(limit_s) + " s]";
  }
  if (!o.pass) ++g_failures;
  std::printf("criterion %2d: %s  %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> unit_grid(int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(static_cast<double>(k) / (n - 1));
  return g;
}

int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- 1

Outcome closed_forms() {
  double worst = 0.0;
  for (double P : unit_grid(20))
    for (double q : unit_grid(20))
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        worst = std::max(worst, std::abs(bitflip_fidelity_a(P, p, q) - cftest::fa_closed(P, p, q)));
        worst = std::max(worst, std::abs(bitflip_fidelity_b(P, p, q) - cftest::fb_closed(P, p, q)));
      }
  return {worst <= 1e-9, "max |F_sim - F_closed| = " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 2

Outcome fig7c_ordering() {
  const Table t = fig7c(unit_grid(20), unit_grid(20), default_jobs());
  double worst = -1.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    worst = std::max(worst, t.at(r, "fidelity_best_b") - t.at(r, "fidelity_best_a"));
  return {worst <= 1e-9 && t.rows.size() == 400, "max (F*_b - F*_a) = " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 3

Outcome qudit_example() {
  double lambda_err = 0.0, fid_err = 0.0, overhead_err = 0.0;
  for (double g : unit_grid(11)) {
    const QuditRoutine r = extended_qudit_routine(amplitude_damping_kraus(g));
    fid_err = std::max(fid_err, std::abs(1.0 - choi_fidelity(routine_channel(r), amplitude_damping(g))));
    if (g <= 0.0 || g >= 1.0) continue;  // Kraus operators lose rank at the endpoints
    ComplexMatrix printed(3, 3);
    printed << 1, 0, 0, 0, std::sqrt(1 - g), -std::sqrt(g), 0, std::sqrt(g), std::sqrt(1 - g);
    if (r.unitary.rows() != 3) return {false, "D != 3 at gamma " + fmt("%g", g)};
    for (int c = 0; c < 3; ++c) {
      const Complex overlap = printed.col(c).dot(r.unitary.col(c));
      const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
      lambda_err = std::max(lambda_err, max_abs(r.unitary.col(c) - phase * printed.col(c)));
    }
    overhead_err = std::max(overhead_err, std::abs(qudit_overhead(r) - (std::log2(3.0) - 1.0)));
  }
  const bool ok = lambda_err < 1e-10 && fid_err < 1e-10 && overhead_err < 1e-12;
  return {ok, "Lambda err " + fmt("%.2g", lambda_err) + ", 1-F " + fmt("%.2g", fid_err) + ", overhead " +
                  fmt("%.6f", std::log2(3.0) - 1.0)};
}

// ---------------------------------------------------------------- 4

Outcome dilation_round_trips() {
  std::mt19937_64 rng(2026);
  double choi_err = 0.0, unit_err = 0.0;
  int count = 0;
  while (count < 200) {
    for (int d = 1; d <= 4 && count < 200; ++d) {
      for (int rank = 1; rank <= d * d && count < 200; ++rank, ++count) {
        const std::vector<cftest::CMat> ks = cftest::random_kraus(d, d, rank, rng);
        const KrausSet set{ks};
        const cftest::CMat ref = cftest::choi_oracle(ks, d);
        const StinespringDilation dil = stinespring_dilate(set);
        const QuditRoutine q = extended_qudit_routine(set);
        const auto n1 = dil.unitary.rows(), n2 = q.unitary.rows();
        unit_err = std::max(unit_err, max_abs(dil.unitary.adjoint() * dil.unitary - ComplexMatrix::Identity(n1, n1)));
        unit_err = std::max(unit_err, max_abs(q.unitary.adjoint() * q.unitary - ComplexMatrix::Identity(n2, n2)));
        choi_err = std::max(choi_err, max_abs(dilation_channel(dil).choi() - ref));
        choi_err = std::max(choi_err, max_abs(routine_channel(q).choi() - ref));
      }
    }
  }
  return {choi_err < 1e-9 && unit_err < 1e-10,
          "200 channels, Choi residual " + fmt("%.2g", choi_err) + ", unitarity residual " + fmt("%.2g", unit_err)};
}

// ---------------------------------------------------------------- 5

Outcome pauli_exactness() {
  const double P = 0.9, Q = 0.9, PQ = P * Q;
  const PauliDiagonalSpec dep_p = PauliDiagonalSpec::depolarizing((3 * P + 1) / 4);
  const PauliDiagonalSpec dep_q = PauliDiagonalSpec::depolarizing((3 * Q + 1) / 4);
  std::mt19937_64 rng(505);
  double worst = 0.0;
  int feasible_ok = 0, infeasible_ok = 0;
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> lambda = cftest::random_distribution(4, rng);
    PauliDiagonalSpec target;
    for (double l : lambda) target.probs.push_back(PQ * l + (1 - PQ) / 4);
    const PauliTailorResult r = pauli_tailor(dep_q, dep_p, target);
    if (!r.feasible) continue;
    ++feasible_ok;
    worst = std::max(worst, max_abs(pauli_tailored_channel(dep_q, dep_p, r.lambda).choi() - pauli_diagonal(target).choi()));
  }
  std::uniform_real_distribution<double> low(0.0, 0.04);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int t = 0; t < 20; ++t) {
    // One weight below the window floor (1 - PQ)/4 = 0.0475.
    const int k = pick(rng);
    const double pk = low(rng);
    const std::vector<double> rest = cftest::random_distribution(3, rng);
    PauliDiagonalSpec target;
    for (int i = 0, j = 0; i < 4; ++i) target.probs.push_back(i == k ? pk : (1 - pk) * rest[j++]);
    if (!pauli_tailor(dep_q, dep_p, target).feasible &&
        !pauli_tailor_depolarizing((3 * P + 1) / 4, (3 * Q + 1) / 4, target).feasible)
      ++infeasible_ok;
  }
  return {feasible_ok == 50 && infeasible_ok == 20 && worst < 1e-10,
          std::to_string(feasible_ok) + "/50 exact (max Choi diff " + fmt("%.2g", worst) + "), " +
              std::to_string(infeasible_ok) + "/20 infeasible"};
}

// ---------------------------------------------------------------- 6

Outcome ad_algebra() {
  double worst = 0.0;
  for (double a : unit_grid(10))
    for (double b : unit_grid(10))
      worst = std::max(worst, max_abs(compose(amplitude_damping(a), amplitude_damping(b)).choi() -
                                      amplitude_damping(1.0 - (1.0 - a) * (1.0 - b)).choi()));
  const AdOrdering o = ad_ordering(0.4, 0.45);
  const bool ordered = o.f3 > o.f1 && o.f1 > o.f2;
  return {worst <= 1e-12 && ordered, "composition residual " + fmt("%.2g", worst) + "; F3 " + fmt("%.8f", o.f3) +
                                         " F1 " + fmt("%.8f", o.f1) + " F2 " + fmt("%.8f", o.f2)};
}

// ---------------------------------------------------------------- 7

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  Table t;
  std::string line;
  if (!std::getline(in, line)) return t;
  std::stringstream h(line);
  for (std::string c; std::getline(h, c, ',');) t.columns.push_back(c);
  while (std::getline(in, line)) {
    std::stringstream s(line);
    std::vector<double> row;
    for (std::string c; std::getline(s, c, ',');) row.push_back(std::stod(c));
    if (!row.empty()) t.rows.push_back(row);
  }
  return t;
}

Outcome method1_improvement() {
  SweepOptions opt;
  opt.jobs = default_jobs();
  const Table t = fig5a(linspace_step(0.80, 1.00, 0.02), opt);
  int bad_direct = 0, bad_blocks = 0;
  double gain = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double d = t.at(r, "infidelity_direct");
    const double noisy = t.at(r, "infidelity_noisy_blocks");
    const double clean = t.at(r, "infidelity_noiseless_blocks");
    if (noisy > d + 1e-9) ++bad_direct;
    if (clean > noisy + 1e-9) ++bad_blocks;
    gain = std::max(gain, d - clean);
  }
  std::string detail = std::to_string(t.rows.size()) + " q values, violations " + std::to_string(bad_direct) + "/" +
                       std::to_string(bad_blocks) + ", largest noiseless gain " + fmt("%.3g", gain);
  const Table base = read_csv(std::string(CF_BASELINE_DIR) + "/fig5a_full.csv");
  double drift = 0.0;
  bool have_base = base.rows.size() == t.rows.size() && base.columns == t.columns;
  if (have_base)
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t c = 0; c < t.columns.size(); ++c) drift = std::max(drift, std::abs(t.rows[r][c] - base.rows[r][c]));
  detail += have_base ? ", baseline drift " + fmt("%.2g", drift) : ", baseline missing";
  return {bad_direct == 0 && bad_blocks == 0 && have_base && drift < 1e-7, detail};
}

// ---------------------------------------------------------------- 8

Outcome method23_agreement() {
  const NoiseModel hw = NoiseModel::gate_model(compose(dephasing(0.925), depolarizing(0.925)));
  double worst = 0.0;
  for (double g : {0.1, 0.5, 0.9}) {
    const Channel target = amplitude_damping(g);
    const TailoringRecipe theta = theta_tailor(target, [](double th) { return build_ad_circuit(th); }, hw);
    const FidelityEvaluator fid(target.choi());
    BlackBoxConfig cfg;
    cfg.tolerance = 1e-10;
    cfg.seed = 8;
    const TailoringRecipe bb = blackbox_optimize(
        [&](const RealVector& x) { return fid(extract_channel(apply_noise_model(build_ad_circuit(x(0)), hw)).channel.choi()); },
        RealVector::Constant(1, ad_theta(g)), cfg);
    worst = std::max(worst, std::abs(bb.param_vector.at(0) - theta.circuit_params.at("theta")));
  }
  return {worst < 1e-3, "max |theta_bb - theta_grid| = " + fmt("%.2g", worst)};
}

// ---------------------------------------------------------------- 9

Outcome invariant_suites() {
  std::mt19937_64 rng(909);
  int checks = 0, failures = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++failures;
  };
  // Channel round trips and CPTP validation.
  for (int t = 0; t < 60; ++t) {
    const int din = 1 + t % 3, dout = 1 + (t / 3) % 3;
    const int rank = std::max(1 + t % (din * dout), (din + dout - 1) / dout);
    const std::vector<cftest::CMat> ks = cftest::random_kraus(din, dout, rank, rng);
    const Channel ch = Channel::from_kraus(KrausSet{ks});
    check(max_abs(ch.choi() - cftest::choi_oracle(ks, din)) < 1e-12);
    check(max_abs(kraus_to_choi(choi_to_kraus(ch)).choi() - ch.choi()) < 1e-12);
    check(max_abs(superop_to_channel(ch.superop()).choi() - ch.choi()) < 1e-12);
    check(validate_cptp(ch).passed());
    ComplexMatrix broken = ch.choi();
    broken(0, 0) += 0.05;
    check(!validate_cptp(Channel::from_choi_unchecked(broken, din, dout)).passed());
  }
  // Noise-model unitality.
  for (double p : unit_grid(6)) {
    for (const Channel& ch : {dephasing(p), depolarizing(p), bit_flip(p), white_noise(p), rotation_noise_b(p)}) {
      const ComplexMatrix out = apply(ch, DensityMatrix::maximally_mixed(2)).matrix();
      check(max_abs(out - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-13);
    }
    if (p > 0) {
      const ComplexMatrix out = apply(amplitude_damping(p), DensityMatrix::maximally_mixed(2)).matrix();
      check(max_abs(out - ComplexMatrix::Identity(2, 2) / 2.0) > 1e-3);
    }
  }
  // Deferred-measurement equivalence.
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int t = 0; t < 20; ++t) {
    const double th = angle(rng);
    const Channel a = extract_channel(build_ad_circuit(th, AdVariant::unitary_cnot)).channel;
    const Channel b = extract_channel(build_ad_circuit(th, AdVariant::measure_feedback)).channel;
    check(max_abs(a.choi() - b.choi()) < 1e-12);
  }
  // Network trace preservation.
  for (int t = 0; t < 20; ++t) {
    NetworkScenario s;
    s.events.push_back({0, AddRegistersEvent{{"a", "b", "c"}, {2, 2, 3}, std::nullopt}});
    s.events.push_back({1, ChannelEvent{"mix", Channel::from_kraus(KrausSet{cftest::random_kraus(12, 12, 4, rng)}),
                                        {"a", "b", "c"}, std::nullopt}});
    s.events.push_back({2, MeasureEvent{"a", "m"}});
    s.events.push_back({3, GateEvent{"x", {}, std::nullopt, {"b"}, MessageCondition{"m", 1}}});
    s.events.push_back({4, ChannelEvent{"loss", amplitude_damping(0.3), {"b"}, std::nullopt}});
    s.events.push_back({5, RemoveRegistersEvent{{"c"}}});
    check(std::abs(run_scenario(s).trace - 1.0) < 1e-10);
  }
  return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(failures) + " failures"};
}

// ---------------------------------------------------------------- 10

Outcome resources() {
  const ResourceEstimate r = resource_estimate(10, 3, 1);
  return {r.active_qubits == 30 && r.qubits_required == 60,
          "active " + std::to_string(r.active_qubits) + ", total " + std::to_string(r.qubits_required)};
}

}  // namespace

int main() {
  criterion(1, "bit-flip circuits match closed-form fidelities", 10, closed_forms);
  criterion(2, "optimized circuit b never beats circuit a", 30, fig7c_ordering);
  criterion(3, "extended-qudit amplitude damping routine", 1, qudit_example);
  criterion(4, "dilation round trips", 60, dilation_round_trips);
  criterion(5, "Pauli tailoring exactness and infeasibility", 10, pauli_exactness);
  criterion(6, "amplitude damping algebra and F3 > F1 > F2", 5, ad_algebra);
  criterion(7, "building-block optimization never worse than direct", 600, method1_improvement);
  criterion(8, "black-box optimizer agrees with theta scan", 120, method23_agreement);
  criterion(9, "invariant suites", 120, invariant_suites);
  criterion(10, "resource arithmetic", 1, resources);
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
