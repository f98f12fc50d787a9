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

#include "channelforge/tailor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "channelforge/errors.hpp"

namespace channelforge {

// --------------------------------------------------- CPTP parameterization

KrausSet CptpParameterization::decode(const RealVector& x) const {
  if (x.size() != num_params()) throw ShapeError("CptpParameterization: wrong parameter count");
  const int rows = ancilla_dim * dim;
  ComplexMatrix a(rows, dim);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < dim; ++c) {
      const Eigen::Index k = 2 * (static_cast<Eigen::Index>(r) * dim + c);
      a(r, c) = Complex(x(k), x(k + 1));
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
  if (es.eigenvalues().minCoeff() < 1e-12) {
    a.topRows(dim) += 1e-6 * ComplexMatrix::Identity(dim, dim);
    es.compute(a.adjoint() * a);
  }
  const RealVector inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const ComplexMatrix v =
      a * (es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
  KrausSet ks;
  for (int i = 0; i < ancilla_dim; ++i) ks.operators.push_back(v.middleRows(static_cast<Eigen::Index>(i) * dim, dim));
  return ks;
}

Superoperator CptpParameterization::decode_superop(const RealVector& x) const {
  return kraus_to_superop(decode(x));
}

RealVector CptpParameterization::encode(const KrausSet& ks) const {
  if (static_cast<int>(ks.size()) > ancilla_dim) {
    throw ShapeError("CptpParameterization: Kraus set larger than the ancilla dimension");
  }
  RealVector x = RealVector::Zero(num_params());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const ComplexMatrix& k = ks.operators[i];
    if (k.rows() != dim || k.cols() != dim) throw ShapeError("CptpParameterization: Kraus shape");
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const Eigen::Index idx = 2 * ((static_cast<Eigen::Index>(i) * dim + r) * dim + c);
        x(idx) = k(r, c).real();
        x(idx + 1) = k(r, c).imag();
      }
  }
  return x;
}

RealVector CptpParameterization::identity() const {
  return encode(KrausSet{{ComplexMatrix::Identity(dim, dim)}});
}

// ---------------------------------------------------------- building block

namespace {

struct BlockLayout {
  int post_blocks = 0;
  int pre_blocks = 0;
  CptpParameterization param;

  int n_post() const { return post_blocks + 1; }
  int n_pre() const { return pre_blocks + 1; }
  int prob_offset() const { return (post_blocks + pre_blocks) * param.num_params(); }
  int num_params() const { return prob_offset() + n_post() * n_pre(); }
  int block_offset(int b) const { return b * param.num_params(); }
};

BlockLayout make_layout(int dim, const BuildingBlockConfig& cfg) {
  if (cfg.mixture_size < 1) throw ConfigError("building_block_optimize: mixture_size must be >= 1");
  BlockLayout l;
  l.param.dim = dim;
  l.param.ancilla_dim = cfg.ancilla_dim > 0 ? cfg.ancilla_dim : dim * dim;
  l.post_blocks = cfg.placement == Placement::pre ? 0 : cfg.mixture_size;
  l.pre_blocks = cfg.placement == Placement::post ? 0 : cfg.mixture_size;
  return l;
}

std::vector<double> square_normalize(const RealVector& x, int offset, int count) {
  std::vector<double> p(static_cast<std::size_t>(count));
  double total = 0.0;
  for (int k = 0; k < count; ++k) total += x(offset + k) * x(offset + k);
  for (int k = 0; k < count; ++k) {
    p[k] = total > 0.0 ? x(offset + k) * x(offset + k) / total : 1.0 / count;
  }
  return p;
}

ComplexMatrix hardware_superop(const NoiseModel& hw, int dim, bool noisy) {
  if (hw.kind == NoiseKind::gate) {
    throw ConfigError("building_block_optimize: gate-model hardware noise is not supported; use a block model");
  }
  if (!noisy || hw.kind == NoiseKind::none || !hw.trailing_noise) {
    return ComplexMatrix::Identity(dim * dim, dim * dim);
  }
  if (hw.trailing_noise->dim_in() != dim || hw.trailing_noise->dim_out() != dim) {
    throw ShapeError("building_block_optimize: block noise dimension does not match the target");
  }
  return hw.trailing_noise->superop().matrix;
}

struct BlockObjective {
  BlockLayout layout;
  ComplexMatrix input;
  ComplexMatrix hw;
  FidelityEvaluator fidelity;
  int dim;

  ComplexMatrix block(const RealVector& x, int b) const {
    const int np = layout.param.num_params();
    return hw * layout.param.decode_superop(x.segment(layout.block_offset(b), np)).matrix;
  }

  ComplexMatrix output(const RealVector& x) const {
    const int n2 = dim * dim;
    const ComplexMatrix id = ComplexMatrix::Identity(n2, n2);
    const std::vector<double> p = square_normalize(x, layout.prob_offset(), layout.n_post() * layout.n_pre());
    std::vector<ComplexMatrix> middle;
    for (int j = 0; j < layout.n_pre(); ++j) {
      middle.push_back(j < layout.pre_blocks ? ComplexMatrix(input * block(x, layout.post_blocks + j)) : input);
    }
    ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
    for (int i = 0; i < layout.n_post(); ++i) {
      ComplexMatrix t = ComplexMatrix::Zero(n2, n2);
      for (int j = 0; j < layout.n_pre(); ++j) t += p[i * layout.n_pre() + j] * middle[j];
      out += i < layout.post_blocks ? ComplexMatrix(block(x, i) * t) : t;
    }
    return out;
  }

  double operator()(const RealVector& x) const {
    const ComplexMatrix choi = reshuffle(output(x), dim, dim) / static_cast<double>(dim);
    return 1.0 - fidelity(hermitian_part(choi));
  }
};

// Identity blocks reproduce the direct implementation. Without block noise
// every slot is then equivalent and uniform weights avoid the zero-gradient
// corner of the square normalization.
RealVector direct_point(const BlockLayout& l, bool blocks_are_noiseless) {
  RealVector x = RealVector::Zero(l.num_params());
  const RealVector id = l.param.identity();
  for (int b = 0; b < l.post_blocks + l.pre_blocks; ++b) x.segment(l.block_offset(b), id.size()) = id;
  if (blocks_are_noiseless) {
    x.tail(l.n_post() * l.n_pre()).setOnes();
  } else {
    x(l.num_params() - 1) = 1.0;  // (omitted, omitted)
  }
  return x;
}

TailoringRecipe run_building_block(const Channel& target, const Channel& input_impl, const NoiseModel& hw,
                                   const BuildingBlockConfig& cfg, const RealVector* seed) {
  const int d = target.dim_in();
  if (target.dim_out() != d || input_impl.dim_in() != d || input_impl.dim_out() != d) {
    throw ShapeError("building_block_optimize: target and input must be equal-dimension endomorphisms");
  }
  const BlockLayout layout = make_layout(d, cfg);
  BlockObjective obj{layout, input_impl.superop().matrix, hardware_superop(hw, d, cfg.noisy_blocks),
                     FidelityEvaluator(target.choi()), d};

  const bool noiseless_blocks = !cfg.noisy_blocks || hw.kind == NoiseKind::none || !hw.trailing_noise;
  std::vector<RealVector> starts;
  if (seed) starts.push_back(*seed);
  starts.push_back(direct_point(layout, noiseless_blocks));
  auto sampler = [&](std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RealVector x(layout.num_params());
    const int np = layout.param.num_params();
    for (int b = 0; b < layout.post_blocks + layout.pre_blocks; ++b) {
      x.segment(layout.block_offset(b), np) = layout.param.encode(KrausSet{{random_unitary(d, rng)}});
      for (int k = 0; k < np; ++k) x(layout.block_offset(b) + k) += 0.1 * g(rng);
    }
    for (int k = layout.prob_offset(); k < layout.num_params(); ++k) x(k) = u(rng);
    return x;
  };
  const Objective f = [&](const RealVector& x) { return obj(x); };
  std::mt19937_64 rng(cfg.search.seed);
  OptimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  int total = 0;
  const int runs = std::max(cfg.search.restarts, static_cast<int>(starts.size()));
  for (int r = 0; r < runs; ++r) {
    const RealVector start = r < static_cast<int>(starts.size()) ? starts[r] : sampler(rng);
    const OptimizeResult run = cfg.search.kind == OptimizerKind::nelder_mead
                                   ? nelder_mead(f, start, cfg.search.local)
                                   : coordinate_descent(f, start, cfg.search.local);
    total += run.evaluations;
    if (run.value < best.value) best = run;
  }
  best.evaluations = total;

  TailoringRecipe r;
  r.method = TailorMethod::building_block;
  for (int i = 0; i < layout.n_post(); ++i) {
    const bool real_block = i < layout.post_blocks;
    r.post_channels.push_back(real_block ? Channel::from_kraus(layout.param.decode(
                                               best.x.segment(layout.block_offset(i), layout.param.num_params())))
                                         : Channel::identity(d));
    r.post_decorated.push_back(real_block && cfg.noisy_blocks && hw.kind == NoiseKind::block);
  }
  for (int j = 0; j < layout.n_pre(); ++j) {
    const bool real_block = j < layout.pre_blocks;
    r.pre_channels.push_back(real_block ? Channel::from_kraus(layout.param.decode(best.x.segment(
                                              layout.block_offset(layout.post_blocks + j), layout.param.num_params())))
                                        : Channel::identity(d));
    r.pre_decorated.push_back(real_block && cfg.noisy_blocks && hw.kind == NoiseKind::block);
  }
  r.probs = square_normalize(best.x, layout.prob_offset(), layout.n_post() * layout.n_pre());
  r.param_vector.assign(best.x.data(), best.x.data() + best.x.size());
  r.achieved_fidelity = std::clamp(1.0 - best.value, 0.0, 1.0);
  r.direct_fidelity = choi_fidelity(input_impl, target);
  r.converged = best.converged;
  r.evaluations = best.evaluations;
  const char* placement = cfg.placement == Placement::pre    ? "pre"
                          : cfg.placement == Placement::post ? "post"
                                                             : "interleaved";
  r.settings = {{"placement", placement},
                {"mixture_size", cfg.mixture_size},
                {"ancilla_dim", layout.param.ancilla_dim},
                {"noisy_blocks", cfg.noisy_blocks},
                {"restarts", cfg.search.restarts},
                {"max_evaluations", cfg.search.local.max_evaluations},
                {"seed", cfg.search.seed},
                {"warm_start", seed != nullptr}};
  return r;
}

}  // namespace

TailoringRecipe building_block_optimize(const Channel& target, const Channel& input_impl,
                                        const NoiseModel& hw, const BuildingBlockConfig& cfg) {
  return run_building_block(target, input_impl, hw, cfg, nullptr);
}

TailoringRecipe building_block_optimize(const Channel& target, const Channel& input_impl,
                                        const NoiseModel& hw, const BuildingBlockConfig& cfg,
                                        const TailoringRecipe& seed) {
  const int d = target.dim_in();
  const BlockLayout layout = make_layout(d, cfg);
  if (static_cast<int>(seed.post_channels.size()) != layout.n_post() ||
      static_cast<int>(seed.pre_channels.size()) != layout.n_pre() ||
      static_cast<int>(seed.probs.size()) != layout.n_post() * layout.n_pre()) {
    throw ConfigError("building_block_optimize: seed recipe has a different block layout");
  }
  const bool absorb = !cfg.noisy_blocks && hw.kind == NoiseKind::block && hw.trailing_noise;
  auto block_params = [&](const Channel& ch, bool decorated) {
    const Channel eff = decorated && absorb ? compose(*hw.trailing_noise, ch) : ch;
    return layout.param.encode(choi_to_kraus(eff));
  };
  RealVector x = RealVector::Zero(layout.num_params());
  for (int i = 0; i < layout.post_blocks; ++i) {
    x.segment(layout.block_offset(i), layout.param.num_params()) =
        block_params(seed.post_channels[i], seed.post_decorated[i]);
  }
  for (int j = 0; j < layout.pre_blocks; ++j) {
    x.segment(layout.block_offset(layout.post_blocks + j), layout.param.num_params()) =
        block_params(seed.pre_channels[j], seed.pre_decorated[j]);
  }
  for (std::size_t k = 0; k < seed.probs.size(); ++k) {
    x(layout.prob_offset() + static_cast<int>(k)) = std::sqrt(std::max(0.0, seed.probs[k]));
  }
  return run_building_block(target, input_impl, hw, cfg, &x);
}

Channel building_block_output(const TailoringRecipe& recipe, const Channel& input_impl, const NoiseModel& hw) {
  const int d = input_impl.dim_in();
  auto decorate = [&](const Channel& ch, bool decorated) {
    if (!decorated) return ch;
    if (hw.kind != NoiseKind::block || !hw.trailing_noise) {
      throw ConfigError("building_block_output: decorated blocks need a block noise model");
    }
    return compose(*hw.trailing_noise, ch);
  };
  const std::size_t n_pre = recipe.pre_channels.size();
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < recipe.post_channels.size(); ++i) {
    const Channel post = decorate(recipe.post_channels[i], recipe.post_decorated[i]);
    for (std::size_t j = 0; j < n_pre; ++j) {
      const double p = recipe.probs[i * n_pre + j];
      if (p == 0.0) continue;
      const Channel pre = decorate(recipe.pre_channels[j], recipe.pre_decorated[j]);
      choi += p * compose(post, compose(input_impl, pre)).choi();
    }
  }
  return Channel::from_choi(hermitian_part(choi), d, d);
}

// ---------------------------------------------------------- Pauli tailoring

namespace {


Eigen::MatrixXd convolution_matrix(const std::vector<double>& x, int n) {
  const int n4 = static_cast<int>(x.size());
  Eigen::MatrixXd c(n4, n4);
  for (int a = 0; a < n4; ++a)
    for (int b = 0; b < n4; ++b) c(a, b) = x[static_cast<std::size_t>(pauli_product_index(a, b, n))];
  return c;
}

RealVector project_simplex(const RealVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

std::vector<double> to_vector(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

PauliTailorResult pauli_tailor(const PauliDiagonalSpec& hw_q, const PauliDiagonalSpec& base_p,
                               const PauliDiagonalSpec& target) {
  hw_q.validate();
  base_p.validate();
  target.validate();
  if (hw_q.probs.size() != target.probs.size() || base_p.probs.size() != target.probs.size()) {
    throw ShapeError("pauli_tailor: specs act on different numbers of qubits");
  }
  const int n = target.num_qubits();
  const Eigen::MatrixXd m = convolution_matrix(hw_q.probs, n) * convolution_matrix(base_p.probs, n);
  const RealVector t = Eigen::Map<const RealVector>(target.probs.data(), static_cast<Eigen::Index>(target.probs.size()));

  PauliTailorResult res;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  RealVector lambda;
  if (lu.rank() == m.rows()) {
    lambda = lu.solve(t);
    if (lambda.minCoeff() < -1e-9) {
      res.residual = 0.0;
      res.feasible = false;
      res.lambda = to_vector(lambda);
      return res;
    }
    lambda = lambda.cwiseMax(0.0);
    lambda /= lambda.sum();
  } else {
    res.non_unique = true;
    const double step = 1.0 / std::max(1e-300, m.operatorNorm() * m.operatorNorm());
    lambda = RealVector::Constant(m.cols(), 1.0 / static_cast<double>(m.cols()));
    for (int it = 0; it < 200000; ++it) {
      const RealVector next = project_simplex(lambda - step * (m.transpose() * (m * lambda - t)));
      const double change = (next - lambda).cwiseAbs().maxCoeff();
      lambda = next;
      if (change < 1e-16) break;
    }
  }
  res.residual = (m * lambda - t).cwiseAbs().maxCoeff();
  res.feasible = res.residual <= 1e-9;
  res.lambda = to_vector(lambda);
  return res;
}

PauliTailorResult pauli_tailor_depolarizing(double p0, double q0, const PauliDiagonalSpec& target) {
  target.validate();
  if (target.probs.size() != 4) throw ShapeError("pauli_tailor_depolarizing: single-qubit target expected");
  const double pq = (4.0 * p0 - 1.0) / 3.0 * ((4.0 * q0 - 1.0) / 3.0);
  PauliTailorResult res;
  if (std::abs(pq) < 1e-15) {
    res.non_unique = true;
    res.lambda.assign(4, 0.25);
  } else {
    res.lambda.resize(4);
    for (int i = 0; i < 4; ++i) res.lambda[i] = (4.0 * target.probs[i] + pq - 1.0) / (4.0 * pq);
  }
  const double lo = (1.0 - pq) / 4.0;
  const double hi = pq + (1.0 - pq) / 4.0;
  res.feasible = true;
  for (double p : target.probs) {
    if (p < std::min(lo, hi) - 1e-12 || p > std::max(lo, hi) + 1e-12) res.feasible = false;
  }
  RealVector lam = Eigen::Map<const RealVector>(res.lambda.data(), 4);
  const Eigen::MatrixXd m = convolution_matrix(PauliDiagonalSpec::depolarizing(q0).probs, 1) *
                            convolution_matrix(PauliDiagonalSpec::depolarizing(p0).probs, 1);
  res.residual = (m * lam - Eigen::Map<const RealVector>(target.probs.data(), 4)).cwiseAbs().maxCoeff();
  if (res.feasible && res.residual > 1e-9) res.feasible = false;
  return res;
}

Channel pauli_tailored_channel(const PauliDiagonalSpec& hw_q, const PauliDiagonalSpec& base_p,
                               const std::vector<double>& lambda) {
  PauliDiagonalSpec l{lambda};
  for (double& v : l.probs) v = std::max(v, 0.0);
  const double total = std::accumulate(l.probs.begin(), l.probs.end(), 0.0);
  for (double& v : l.probs) v /= total;
  const Channel seq[3] = {pauli_diagonal(base_p), pauli_diagonal(l), pauli_diagonal(hw_q)};
  return compose_sequence(seq);
}

// ------------------------------------------------------- amplitude damping

AdRepeatResult ad_repeat_tailor(double hw_P, double target_P, int n_max) {
  if (!(hw_P > 0.0 && hw_P < 1.0)) throw ConfigError("ad_repeat_tailor: hw_P must lie in (0, 1)");
  if (n_max < 1) throw ConfigError("ad_repeat_tailor: n_max must be >= 1");
  const Channel target = amplitude_damping(target_P);
  AdRepeatResult best;
  best.fidelity = -1.0;
  for (int n = 1; n <= n_max; ++n) {
    const double p = 1.0 - std::pow(1.0 - hw_P, n);
    const double f = choi_fidelity(amplitude_damping(p), target);
    if (f > best.fidelity + 1e-12) best = AdRepeatResult{n, p, f};
  }
  return best;
}

TailoringRecipe theta_tailor(const Channel& target, const std::function<Circuit(double)>& builder,
                             const NoiseModel& hw, const ThetaTailorConfig& cfg) {
  const FidelityEvaluator fid(target.choi());
  auto fidelity_at = [&](double theta) {
    return fid(extract_channel(apply_noise_model(builder(theta), hw)).channel.choi());
  };
  const ScalarResult best = grid_brent_minimize([&](double t) { return -fidelity_at(t); }, cfg.lo, cfg.hi, cfg.grid);
  TailoringRecipe r;
  r.method = TailorMethod::tailored_circuit;
  r.circuit_params["theta"] = best.x;
  r.param_vector = {best.x};
  r.achieved_fidelity = std::clamp(-best.value, 0.0, 1.0);
  r.direct_fidelity = cfg.reference_theta ? fidelity_at(*cfg.reference_theta) : r.achieved_fidelity;
  r.converged = true;
  r.evaluations = best.evaluations;
  r.settings = {{"lo", cfg.lo}, {"hi", cfg.hi}, {"grid", cfg.grid}};
  return r;
}

ParametricTemplate ad_theta_template(AdVariant variant) {
  ParametricTemplate t;
  t.names = {"theta"};
  t.defaults = RealVector::Zero(1);
  t.build = [variant](const RealVector& x) { return build_ad_circuit(x(0), variant); };
  return t;
}

ParametricTemplate ad_full_template(double theta0, AdVariant variant) {
  ParametricTemplate t;
  t.names = {"ry_data_pre", "ry_ancilla_pre", "theta", "ry_ancilla_mid", "ry_data_post"};
  t.defaults = RealVector::Zero(5);
  t.defaults(2) = theta0;
  t.build = [variant](const RealVector& x) {
    Circuit c;
    c.add_wire("q0");
    c.add_wire("a0", 2, WireRole::ancilla);
    c.named("ry", {x(0)}, {0});
    c.named("ry", {x(1)}, {1});
    c.named("cry", {x(2)}, {0, 1});
    c.named("ry", {x(3)}, {1});
    if (variant == AdVariant::unitary_cnot) {
      c.named("cnot", {}, {1, 0});
    } else {
      c.measure(1, "m0");
      c.named("x", {}, {0}, Condition{"m0", 1});
    }
    c.named("ry", {x(4)}, {0});
    c.trace_out(1);
    return c;
  };
  return t;
}

double template_fidelity(const ParametricTemplate& t, const RealVector& x, const NoiseModel& hw,
                         const FidelityEvaluator& target) {
  return target(extract_channel(apply_noise_model(t.build(x), hw)).channel.choi());
}

TailoringRecipe full_circuit_tailor(const Channel& target, const ParametricTemplate& tmpl,
                                    const NoiseModel& hw, const FullCircuitConfig& cfg) {
  const FidelityEvaluator fid(target.choi());
  const Objective f = [&](const RealVector& x) { return 1.0 - template_fidelity(tmpl, x, hw, fid); };
  OptimizeResult best = multistart(f, tmpl.defaults, cfg.search);
  for (const RealVector& s : cfg.extra_seeds) {
    if (s.size() != tmpl.defaults.size()) throw ShapeError("full_circuit_tailor: seed has the wrong size");
    OptimizeResult run = nelder_mead(f, s, cfg.search.local);
    best.evaluations += run.evaluations;
    if (run.value < best.value) {
      run.evaluations = best.evaluations;
      best = run;
    }
  }
  TailoringRecipe r;
  r.method = TailorMethod::tailored_circuit;
  for (int k = 0; k < tmpl.num_params(); ++k) {
    const std::string name = k < static_cast<int>(tmpl.names.size()) ? tmpl.names[k] : "p" + std::to_string(k);
    r.circuit_params[name] = best.x(k);
  }
  r.param_vector.assign(best.x.data(), best.x.data() + best.x.size());
  r.achieved_fidelity = std::clamp(1.0 - best.value, 0.0, 1.0);
  r.direct_fidelity = 1.0 - f(tmpl.defaults);
  r.converged = best.converged;
  r.evaluations = best.evaluations;
  r.settings = {{"restarts", cfg.search.restarts},
                {"max_evaluations", cfg.search.local.max_evaluations},
                {"seed", cfg.search.seed},
                {"extra_seeds", cfg.extra_seeds.size()}};
  return r;
}

AdOrdering ad_ordering(double hw_P, double target_P, int n_max) {
  AdOrdering out;
  const AdRepeatResult rep = ad_repeat_tailor(hw_P, target_P, n_max);
  out.f1 = rep.fidelity;
  out.n1 = rep.n;
  const Channel target = amplitude_damping(target_P);
  const NoiseModel hw = NoiseModel::block_model(amplitude_damping(hw_P));
  const auto builder = [](double theta) { return build_ad_circuit(theta); };
  ThetaTailorConfig cfg;
  cfg.reference_theta = ad_theta(target_P);
  const TailoringRecipe r = theta_tailor(target, builder, hw, cfg);
  out.f2 = r.direct_fidelity;
  out.f3 = r.achieved_fidelity;
  out.theta3 = r.circuit_params.at("theta");
  return out;
}

// ----------------------------------------------------------------- Method 3

TailoringRecipe blackbox_optimize(const std::function<double(const RealVector&)>& oracle,
                                  const RealVector& x0, const BlackBoxConfig& cfg) {
  MultiStartOptions ms;
  ms.restarts = std::max(1, cfg.restarts);
  ms.seed = cfg.seed;
  ms.spread = cfg.spread;
  ms.kind = cfg.kind;
  ms.local.max_evaluations = std::max(1, cfg.budget / ms.restarts);
  ms.local.tolerance = cfg.tolerance;
  ms.local.initial_step = cfg.initial_step;
  const OptimizeResult best = multistart([&](const RealVector& x) { return 1.0 - oracle(x); }, x0, ms);
  TailoringRecipe r;
  r.method = TailorMethod::black_box;
  r.param_vector.assign(best.x.data(), best.x.data() + best.x.size());
  r.achieved_fidelity = std::clamp(1.0 - best.value, 0.0, 1.0);
  r.direct_fidelity = oracle(x0);
  r.converged = best.converged;
  r.evaluations = best.evaluations;
  r.settings = {{"budget", cfg.budget},
                {"restarts", ms.restarts},
                {"seed", cfg.seed},
                {"optimizer", cfg.kind == OptimizerKind::nelder_mead ? "nelder-mead" : "coordinate-descent"}};
  return r;
}

}  // namespace channelforge
