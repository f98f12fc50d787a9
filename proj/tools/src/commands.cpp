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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "channelforge/errors.hpp"
#include "channelforge/experiments.hpp"
#include "channelforge/io.hpp"
#include "channelforge/noise.hpp"

namespace channelforge::cli {
namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
    spdlog::info("wrote {}", g.out);
  }
}

void emit_json(const GlobalOptions& g, const json& j) { emit(g, j.dump(2) + "\n"); }

json load_config(const GlobalOptions& g) {
  return g.config.empty() ? json::object() : read_json_file(g.config);
}

std::uint64_t require_seed(const GlobalOptions& g, const json& cfg) {
  if (g.seed) return *g.seed;
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  throw ConfigError("this mode is stochastic: pass --seed or set \"seed\" in the config");
}

Channel load_channel(const std::string& path) {
  const json j = read_json_file(path);
  return j.contains("choi_re") ? channel_from_json(j) : channel_from_spec(j);
}

// ------------------------------------------------------------------ channel

struct BuildArgs {
  std::string name;
  std::optional<double> p, q, gamma;
  std::optional<int> dim;
  std::string spec;
};

void cmd_channel_build(const GlobalOptions& g, const BuildArgs& a) {
  json spec;
  if (!a.spec.empty()) {
    try {
      spec = json::parse(a.spec);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("--spec: ") + e.what());
    }
  } else {
    if (a.name.empty()) throw ConfigError("channel build: pass --name or --spec");
    spec["name"] = a.name;
    if (a.p) spec["p"] = *a.p;
    if (a.q) spec["q"] = *a.q;
    if (a.gamma) spec["gamma"] = *a.gamma;
    if (a.dim) spec["dim"] = *a.dim;
  }
  emit_json(g, channel_to_json(channel_from_spec(spec)));
}

void cmd_channel_convert(const GlobalOptions& g, const std::string& file, const std::string& to) {
  const Channel ch = load_channel(file);
  json out = {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}};
  if (to == "choi") {
    out = channel_to_json(ch);
  } else if (to == "kraus") {
    out["kraus"] = json::array();
    for (const auto& k : ch.kraus().operators) out["kraus"].push_back(matrix_to_json(k));
  } else {
    out["superop"] = matrix_to_json(ch.superop().matrix);
    out["vectorization"] = "row-major";
  }
  emit_json(g, out);
}

void cmd_channel_fidelity(const GlobalOptions& g, const std::string& a, const std::string& b) {
  const double f = choi_fidelity(load_channel(a), load_channel(b));
  if (g.format == "json") emit_json(g, {{"fidelity", f}});
  else emit(g, number(f) + "\n");
}

int cmd_channel_validate(const GlobalOptions& g, const std::string& file) {
  const json j = read_json_file(file);
  const Channel ch = j.contains("choi_re") ? channel_from_json_unchecked(j) : channel_from_spec(j);
  const CptpReport r = validate_cptp(ch);
  emit_json(g, {{"passed", r.passed()},
                {"min_eigenvalue", r.min_eigenvalue},
                {"tp_residual", r.tp_residual},
                {"hermiticity_residual", r.hermiticity_residual},
                {"tolerance", r.tolerance}});
  if (!r.passed()) {
    std::cerr << "invalid channel: min eigenvalue " << number(r.min_eigenvalue) << ", trace residual "
              << number(r.tp_residual) << "\n";
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------------ dilate

void cmd_dilate(const GlobalOptions& g, const std::string& file, const std::string& mode) {
  const Channel ch = load_channel(file);
  json out;
  if (mode == "ancilla") {
    const StinespringDilation d = stinespring_dilate(ch.kraus());
    out = dilation_to_json(d);
    out["residual"] = max_abs(dilation_channel(d).choi() - ch.choi());
  } else {
    const QuditRoutine r = extended_qudit_routine(ch.kraus());
    out = routine_to_json(r);
    out["residual"] = max_abs(routine_channel(r).choi() - ch.choi());
  }
  emit_json(g, out);
  if (!g.out.empty()) std::cout << "overhead " << number(out.at("overhead").get<double>()) << "\n";
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const GlobalOptions& g, const std::string& file, const std::string& noise,
                  const std::string& state) {
  Circuit c = circuit_from_json(read_json_file(file));
  if (!noise.empty()) c = apply_noise_model(c, noise_model_from_json(read_json_file(noise)));
  if (state.empty()) {
    emit_json(g, channel_to_json(extract_channel(c).channel));
    return;
  }
  const json sj = read_json_file(state);
  const ComplexMatrix m = sj.contains("ket") ? ComplexMatrix(ket_from_json(sj.at("ket")) * ket_from_json(sj.at("ket")).adjoint())
                                             : matrix_from_json(sj.contains("density") ? sj.at("density") : sj);
  const SimulationResult res = simulate_branches(c, DensityMatrix(m));
  json branches = json::array();
  for (const auto& b : res.branches) branches.push_back({{"registers", b.registers}, {"probability", b.probability}});
  emit_json(g, {{"output_dims", res.output_dims},
                {"state", matrix_to_json(res.mixed_state().matrix())},
                {"branches", branches}});
}

// ------------------------------------------------------------------ tailor

MultiStartOptions search_from(const json& cfg, std::uint64_t seed) {
  MultiStartOptions ms;
  ms.seed = seed;
  ms.restarts = cfg.value("restarts", ms.restarts);
  ms.local.max_evaluations = cfg.value("max_evaluations", ms.local.max_evaluations);
  const std::string opt = cfg.value("optimizer", std::string("nelder-mead"));
  if (opt == "coordinate-descent") ms.kind = OptimizerKind::coordinate_descent;
  else if (opt != "nelder-mead") throw ConfigError("optimizer must be nelder-mead or coordinate-descent");
  return ms;
}

AdVariant variant_from(const json& cfg) {
  const std::string v = cfg.value("variant", std::string("unitary_cnot"));
  if (v == "unitary_cnot") return AdVariant::unitary_cnot;
  if (v == "measure_feedback") return AdVariant::measure_feedback;
  throw ConfigError("variant must be unitary_cnot or measure_feedback");
}

double ad_gamma_of(const json& cfg) {
  const json& t = cfg.at("target");
  if (t.value("name", std::string()) != "amplitude_damping") {
    throw ConfigError("this method tailors the amplitude damping circuit; target must be amplitude_damping");
  }
  return t.value("gamma", t.value("p", 0.0));
}

json cmd_tailor_job(const GlobalOptions& g, const json& cfg) {
  if (!cfg.contains("method")) throw ConfigError("tailor config: missing 'method'");
  const std::string method = cfg.at("method").get<std::string>();
  const NoiseModel hw = cfg.contains("hw") ? noise_model_from_json(cfg.at("hw")) : NoiseModel::noiseless();

  if (method == "pauli") {
    const PauliDiagonalSpec q{cfg.at("hw_pauli").get<std::vector<double>>()};
    const PauliDiagonalSpec p{cfg.at("base").get<std::vector<double>>()};
    const PauliDiagonalSpec t{cfg.at("target_pauli").get<std::vector<double>>()};
    const PauliTailorResult r = pauli_tailor(q, p, t);
    return {{"method", "pauli"}, {"feasible", r.feasible}, {"lambda", r.lambda},
            {"non_unique", r.non_unique}, {"residual", r.residual}};
  }
  if (method == "ad_repeat") {
    const AdRepeatResult r = ad_repeat_tailor(cfg.at("hw_P").get<double>(), cfg.at("target_P").get<double>(),
                                              cfg.value("n_max", 8));
    return {{"method", "ad_repeat"}, {"n", r.n}, {"p_tilde", r.p_tilde}, {"fidelity", r.fidelity}};
  }
  if (!cfg.contains("target")) throw ConfigError("tailor config: missing 'target'");
  const Channel target = channel_from_spec(cfg.at("target"));

  if (method == "building_block") {
    const std::uint64_t seed = require_seed(g, cfg);
    Channel input = target;
    if (cfg.contains("input")) input = channel_from_spec(cfg.at("input"));
    else if (hw.kind == NoiseKind::block) input = compose(*hw.trailing_noise, target);
    BuildingBlockConfig bc;
    const std::string placement = cfg.value("placement", std::string("interleaved"));
    if (placement == "pre") bc.placement = Placement::pre;
    else if (placement == "post") bc.placement = Placement::post;
    else if (placement == "interleaved") bc.placement = Placement::interleaved;
    else throw ConfigError("placement must be pre, post or interleaved");
    bc.mixture_size = cfg.value("mixture_size", bc.mixture_size);
    bc.ancilla_dim = cfg.value("ancilla_dim", bc.ancilla_dim);
    bc.noisy_blocks = cfg.value("noisy_blocks", bc.noisy_blocks);
    bc.search = search_from(cfg, seed);
    return recipe_to_json(building_block_optimize(target, input, hw, bc));
  }
  if (method == "theta") {
    const AdVariant v = variant_from(cfg);
    ThetaTailorConfig tc;
    tc.grid = cfg.value("grid", tc.grid);
    tc.reference_theta = ad_theta(ad_gamma_of(cfg));
    return recipe_to_json(theta_tailor(target, [v](double t) { return build_ad_circuit(t, v); }, hw, tc));
  }
  if (method == "full_circuit") {
    const std::uint64_t seed = require_seed(g, cfg);
    const AdVariant v = variant_from(cfg);
    ThetaTailorConfig tc;
    tc.reference_theta = ad_theta(ad_gamma_of(cfg));
    const TailoringRecipe th = theta_tailor(target, [v](double t) { return build_ad_circuit(t, v); }, hw, tc);
    FullCircuitConfig fc;
    fc.search = search_from(cfg, seed);
    json out = recipe_to_json(full_circuit_tailor(target, ad_full_template(th.circuit_params.at("theta"), v), hw, fc));
    out["theta_only_fidelity"] = th.achieved_fidelity;
    return out;
  }
  if (method == "blackbox") {
    const std::uint64_t seed = require_seed(g, cfg);
    const AdVariant v = variant_from(cfg);
    const FidelityEvaluator fid(target.choi());
    BlackBoxConfig bb;
    bb.seed = seed;
    bb.budget = cfg.value("budget", bb.budget);
    bb.restarts = cfg.value("restarts", bb.restarts);
    if (cfg.value("optimizer", std::string("nelder-mead")) == "coordinate-descent") {
      bb.kind = OptimizerKind::coordinate_descent;
    }
    RealVector x0(1);
    x0(0) = cfg.value("theta0", std::numbers::pi / 2);
    auto oracle = [&](const RealVector& x) {
      return fid(extract_channel(apply_noise_model(build_ad_circuit(x(0), v), hw)).channel.choi());
    };
    return recipe_to_json(blackbox_optimize(oracle, x0, bb));
  }
  throw ConfigError("unknown tailoring method '" + method + "'");
}

// ----------------------------------------------------------------- figures

std::vector<double> grid_from(const json& cfg, const char* fig, const char* key, std::vector<double> fallback) {
  if (cfg.contains(fig) && cfg.at(fig).contains(key)) {
    const json& v = cfg.at(fig).at(key);
    std::vector<double> out;
    if (v.is_array()) out = v.get<std::vector<double>>();
    else out = linspace_step(v.at("lo").get<double>(), v.at("hi").get<double>(), v.at("step").get<double>());
    if (out.empty()) throw ConfigError(std::string(fig) + "." + key + ": grid must be non-empty");
    return out;
  }
  return fallback;
}

Table run_figure(const GlobalOptions& g, const json& cfg, const std::string& fig, const SweepOptions& so_in) {
  SweepOptions so = so_in;
  const auto seeded = [&] {
    so.seed = require_seed(g, cfg);
    return so;
  };
  if (fig == "fig5a") return fig5a(grid_from(cfg, "fig5a", "q", linspace_step(0.80, 1.00, 0.02)), seeded());
  if (fig == "fig5b") return fig5b(grid_from(cfg, "fig5b", "target_p", linspace_step(0.30, 1.00, 0.05)), seeded());
  if (fig == "fig6a") {
    const double q = cfg.contains("fig6a") ? cfg.at("fig6a").value("hw_q", 0.925) : 0.925;
    return fig6a(grid_from(cfg, "fig6a", "gamma", linspace_step(0.0, 1.0, 0.05)), q);
  }
  if (fig == "fig6b") return fig6b(grid_from(cfg, "fig6b", "gamma", linspace_step(0.05, 0.95, 0.05)), seeded());
  if (fig == "fig6c") return fig6c(grid_from(cfg, "fig6c", "target_p", linspace_step(0.25, 1.00, 0.05)), seeded());
  if (fig == "fig7c") {
    std::vector<double> unit;
    for (int k = 0; k < 20; ++k) unit.push_back(k / 19.0);
    return fig7c(grid_from(cfg, "fig7c", "P", unit), grid_from(cfg, "fig7c", "q", unit), so.jobs);
  }
  throw ConfigError("unknown figure '" + fig + "'");
}

void cmd_figures(const GlobalOptions& g, const std::string& which, std::optional<int> restarts,
                 std::optional<int> evals) {
  const json cfg = load_config(g);
  SweepOptions so;
  so.jobs = g.jobs;
  so.restarts = restarts.value_or(cfg.value("restarts", so.restarts));
  so.max_evaluations = evals.value_or(cfg.value("max_evaluations", so.max_evaluations));
  const std::vector<std::string> all = {"fig5a", "fig5b", "fig6a", "fig6b", "fig6c", "fig7c"};
  const auto render = [&](const Table& t) { return g.format == "csv" ? t.to_csv() : t.to_json().dump(2) + "\n"; };
  if (which != "all") {
    emit(g, render(run_figure(g, cfg, which, so)));
    return;
  }
  if (g.out.empty()) throw ConfigError("figures all: --out must name a directory");
  std::filesystem::create_directories(g.out);
  for (const auto& fig : all) {
    spdlog::info("running {}", fig);
    const std::string ext = g.format == "csv" ? ".csv" : ".json";
    write_text_file(std::filesystem::path(g.out) / (fig + ext), render(run_figure(g, cfg, fig, so)));
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"channel-forge: build, dilate, simulate and noise-tailor quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config, "JSON job configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "RNG seed for stochastic modes");
  app.add_option("--out", g.out, "output path (stdout when omitted)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* channel = app.add_subcommand("channel", "channel utilities");
  channel->require_subcommand(1);
  BuildArgs build;
  auto* c_build = channel->add_subcommand("build", "serialize a named channel");
  c_build->add_option("--name", build.name, "factory name");
  c_build->add_option("--p", build.p);
  c_build->add_option("--q", build.q);
  c_build->add_option("--gamma", build.gamma);
  c_build->add_option("--dim", build.dim);
  c_build->add_option("--spec", build.spec, "inline JSON channel spec");
  c_build->callback([&] { action = [&] { cmd_channel_build(g, build); return 0; }; });

  std::string conv_file, conv_to = "kraus";
  auto* c_conv = channel->add_subcommand("convert", "print another representation");
  c_conv->add_option("file", conv_file)->required()->check(CLI::ExistingFile);
  c_conv->add_option("--to", conv_to)->check(CLI::IsMember({"choi", "kraus", "superop"}));
  c_conv->callback([&] { action = [&] { cmd_channel_convert(g, conv_file, conv_to); return 0; }; });

  std::string fid_a, fid_b;
  auto* c_fid = channel->add_subcommand("fidelity", "Choi fidelity of two channels");
  c_fid->add_option("a", fid_a)->required()->check(CLI::ExistingFile);
  c_fid->add_option("b", fid_b)->required()->check(CLI::ExistingFile);
  c_fid->callback([&] {
    if (g.format == "json" && !app.get_option("--format")->count()) g.format = "csv";
    action = [&] { cmd_channel_fidelity(g, fid_a, fid_b); return 0; };
  });

  std::string val_file;
  auto* c_val = channel->add_subcommand("validate", "CPTP check");
  c_val->add_option("file", val_file)->required()->check(CLI::ExistingFile);
  c_val->callback([&] { action = [&] { return cmd_channel_validate(g, val_file); }; });

  std::string dil_file, dil_mode = "ancilla";
  auto* dilate = app.add_subcommand("dilate", "synthesize a dilation routine");
  dilate->add_option("file", dil_file)->required()->check(CLI::ExistingFile);
  dilate->add_option("--mode", dil_mode)->check(CLI::IsMember({"ancilla", "qudit"}));
  dilate->callback([&] { action = [&] { cmd_dilate(g, dil_file, dil_mode); return 0; }; });

  std::string sim_file, sim_noise, sim_state;
  auto* simulate = app.add_subcommand("simulate", "simulate a circuit file");
  simulate->add_option("file", sim_file)->required()->check(CLI::ExistingFile);
  simulate->add_option("--noise", sim_noise, "noise model JSON")->check(CLI::ExistingFile);
  simulate->add_option("--state", sim_state, "input state JSON; channel extraction when omitted")
      ->check(CLI::ExistingFile);
  simulate->callback([&] { action = [&] { cmd_simulate(g, sim_file, sim_noise, sim_state); return 0; }; });

  auto* tailor = app.add_subcommand("tailor", "run a tailoring job from --config");
  tailor->callback([&] {
    action = [&] {
      if (g.config.empty()) throw ConfigError("tailor: --config is required");
      emit_json(g, cmd_tailor_job(g, read_json_file(g.config)));
      return 0;
    };
  });

  std::string fig_which = "all";
  std::optional<int> fig_restarts, fig_evals;
  auto* figures = app.add_subcommand("figures", "figure sweeps as CSV or JSON");
  figures->add_option("--which", fig_which)
      ->check(CLI::IsMember({"all", "fig5a", "fig5b", "fig6a", "fig6b", "fig6c", "fig7c"}));
  figures->add_option("--restarts", fig_restarts)->check(CLI::PositiveNumber);
  figures->add_option("--evals", fig_evals, "evaluations per restart")->check(CLI::PositiveNumber);
  figures->callback([&] {
    if (!app.get_option("--format")->count()) g.format = "csv";
    action = [&] { cmd_figures(g, fig_which, fig_restarts, fig_evals); return 0; };
  });

  std::string net_file;
  auto* netsim = app.add_subcommand("netsim", "run a network scenario");
  netsim->add_option("file", net_file)->required()->check(CLI::ExistingFile);
  netsim->callback([&] {
    action = [&] {
      emit_json(g, report_to_json(run_scenario(scenario_from_json(read_json_file(net_file)))));
      return 0;
    };
  });

  int rn = 0, rm = 0, rk = 0;
  auto* resources = app.add_subcommand("resources", "register count for purification rounds");
  resources->add_option("--n", rn, "qubits per state")->required();
  resources->add_option("--m", rm, "copies")->required();
  resources->add_option("--k", rk, "rounds")->required();
  resources->callback([&] {
    action = [&] {
      emit_json(g, resources_to_json(resource_estimate(rn, rm, rk)));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace channelforge::cli
