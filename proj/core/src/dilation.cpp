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

#include "channelforge/dilation.hpp"

#include <cmath>
#include <string>

#include "channelforge/circuit.hpp"
#include "channelforge/errors.hpp"
#include "channelforge/noise.hpp"

namespace channelforge {
namespace {

constexpr double kSingularCutoff = 1e-12;

void require_complete(const KrausSet& ks, const char* where) {
  if (ks.operators.empty()) throw ShapeError(std::string(where) + ": empty Kraus set");
  for (const auto& k : ks.operators) {
    if (k.rows() != ks.dim_out() || k.cols() != ks.dim_in()) {
      throw ShapeError(std::string(where) + ": Kraus operators have inconsistent shapes");
    }
  }
  const double residual = ks.completeness_residual();
  if (residual > 1e-10) {
    throw CompletenessError(std::string(where) + ": sum K^dagger K deviates from identity by " +
                                std::to_string(residual),
                            residual);
  }
}

ComplexMatrix embed(const ComplexMatrix& x, int total) {
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  out.topLeftCorner(x.rows(), x.cols()) = x;
  return out;
}

// Rotates each column so that its largest-magnitude entry is real positive.
void canonicalize_columns(ComplexMatrix& w, ComplexMatrix& v) {
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    Eigen::Index arg = 0;
    w.col(j).cwiseAbs().maxCoeff(&arg);
    const Complex entry = w(arg, j);
    if (std::abs(entry) == 0.0) continue;
    const Complex phase = std::conj(entry / std::abs(entry));
    w.col(j) *= phase;
    if (j < v.cols()) v.col(j) *= phase;
  }
}

}  // namespace

// ------------------------------------------------------------- Stinespring

double StinespringDilation::overhead() const { return std::log2(static_cast<double>(ancilla_dim)); }

StinespringDilation stinespring_dilate(const KrausSet& ks) {
  require_complete(ks, "stinespring_dilate");
  const int r = static_cast<int>(ks.size());
  const int din = ks.dim_in();
  const int dout = ks.dim_out();
  if (din > dout) throw ShapeError("stinespring_dilate: needs dim_in <= dim_out");
  const int total = r * dout;
  ComplexMatrix columns(total, din);
  for (int i = 0; i < r; ++i) columns.middleRows(static_cast<Eigen::Index>(i) * dout, dout) = ks.operators[i];
  StinespringDilation dil;
  dil.unitary = complete_to_unitary(columns, total);
  dil.ancilla_dim = r;
  dil.dim_in = din;
  dil.dim_out = dout;
  return dil;
}

ComplexMatrix dilation_execute_operator(const StinespringDilation& dil, const ComplexMatrix& x) {
  if (x.rows() != dil.dim_in || x.cols() != dil.dim_in) {
    throw ShapeError("dilation_execute: operator does not match the input dimension");
  }
  const int total = static_cast<int>(dil.unitary.rows());
  const ComplexMatrix y = dil.unitary * embed(x, total) * dil.unitary.adjoint();
  const int dims[2] = {dil.ancilla_dim, dil.dim_out};
  const int keep[1] = {1};
  return partial_trace(y, dims, keep);
}

DensityMatrix dilation_execute(const StinespringDilation& dil, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(dilation_execute_operator(dil, rho.matrix())));
}

Channel dilation_channel(const StinespringDilation& dil) {
  return choi_of_map([&](const ComplexMatrix& x) { return dilation_execute_operator(dil, x); },
                     dil.dim_in, dil.dim_out);
}

// ---------------------------------------------------------- extended qudit

QuditRoutine extended_qudit_routine(const KrausSet& ks) {
  require_complete(ks, "extended_qudit_routine");
  const int d = ks.dim_in();
  if (ks.dim_out() != d) throw ShapeError("extended_qudit_routine: needs dim_in == dim_out");

  std::vector<ComplexMatrix> reduced;
  std::vector<ComplexMatrix> left;
  QuditRoutine r;
  r.data_dim = d;
  int offset = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    Eigen::JacobiSVD<ComplexMatrix> svd(ks.operators[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    int kappa = 0;
    while (kappa < s.size() && s(kappa) > kSingularCutoff) ++kappa;
    if (kappa == 0) continue;
    ComplexMatrix w = svd.matrixU();
    ComplexMatrix v = svd.matrixV();
    canonicalize_columns(w, v);
    ComplexMatrix kt(kappa, d);
    for (int j = 0; j < kappa; ++j) kt.row(j) = s(j) * v.col(j).adjoint();
    reduced.push_back(std::move(kt));
    left.push_back(std::move(w));
    r.block_start.push_back(offset);
    r.branch_ranks.push_back(kappa);
    r.kraus_index.push_back(static_cast<int>(i));
    offset += kappa;
  }
  const int total = offset;
  r.total_dim = total;

  ComplexMatrix columns(total, d);
  for (std::size_t b = 0; b < reduced.size(); ++b) {
    columns.middleRows(r.block_start[b], r.branch_ranks[b]) = reduced[b];
  }
  r.unitary = complete_to_unitary(columns, total);

  const ComplexMatrix shift = gate_shift(total);
  for (std::size_t b = 0; b < reduced.size(); ++b) {
    ComplexMatrix p = ComplexMatrix::Zero(total, total);
    for (int j = 0; j < r.branch_ranks[b]; ++j) p(r.block_start[b] + j, r.block_start[b] + j) = 1.0;
    r.projectors.push_back(std::move(p));

    ComplexMatrix wbar = ComplexMatrix::Identity(total, total);
    wbar.topLeftCorner(d, d) = left[b];
    ComplexMatrix power = ComplexMatrix::Identity(total, total);
    for (int k = 0; k < r.block_start[b]; ++k) power = shift * power;
    r.corrections.push_back(wbar * power);
  }
  return r;
}

std::vector<RoutineBranch> routine_branches(const QuditRoutine& r, const ComplexMatrix& x) {
  if (x.rows() != r.data_dim || x.cols() != r.data_dim) {
    throw ShapeError("routine_branches: operator does not match the data dimension");
  }
  const ComplexMatrix y = r.unitary * embed(x, r.total_dim) * r.unitary.adjoint();
  std::vector<RoutineBranch> out;
  for (std::size_t b = 0; b < r.projectors.size(); ++b) {
    const ComplexMatrix& p = r.projectors[b];
    const ComplexMatrix& w = r.corrections[b];
    RoutineBranch br;
    br.outcome = r.kraus_index[b];
    br.embedded = w * p * y * p * w.adjoint();
    br.probability = std::max(0.0, br.embedded.trace().real());
    out.push_back(std::move(br));
  }
  return out;
}

ComplexMatrix routine_execute_embedded(const QuditRoutine& r, const ComplexMatrix& x) {
  ComplexMatrix acc = ComplexMatrix::Zero(r.total_dim, r.total_dim);
  for (const auto& b : routine_branches(r, x)) acc += b.embedded;
  return acc;
}

DensityMatrix routine_execute(const QuditRoutine& r, const DensityMatrix& rho) {
  const ComplexMatrix out = routine_execute_embedded(r, rho.matrix());
  return DensityMatrix(hermitian_part(out.topLeftCorner(r.data_dim, r.data_dim)));
}

Channel routine_channel(const QuditRoutine& r) {
  return choi_of_map(
      [&](const ComplexMatrix& x) {
        return ComplexMatrix(routine_execute_embedded(r, x).topLeftCorner(r.data_dim, r.data_dim));
      },
      r.data_dim, r.data_dim);
}

double qudit_overhead(const QuditRoutine& r) {
  return std::log2(static_cast<double>(r.total_dim)) - std::log2(static_cast<double>(r.data_dim));
}

// ------------------------------------------------------------ special cases

std::optional<MixedUnitary> mixed_unitary_decompose(const Channel& ch) {
  const int d = ch.dim_in();
  if (ch.dim_out() != d || d < 2 || (d & (d - 1)) != 0) return std::nullopt;
  if (!is_pauli_diagonal(ch, 1e-10)) return std::nullopt;
  int n = 0;
  while ((1 << n) < d) ++n;
  const std::vector<double> probs = pauli_probabilities(ch);
  MixedUnitary mu;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= kRankCutoff) continue;
    mu.unitaries.push_back(pauli_string(static_cast<int>(i), n));
    mu.probs.push_back(probs[i]);
  }
  return mu;
}

Channel mixed_unitary_channel(const MixedUnitary& mu) {
  KrausSet ks;
  for (std::size_t k = 0; k < mu.unitaries.size(); ++k) {
    ks.operators.push_back(std::sqrt(mu.probs[k]) * mu.unitaries[k]);
  }
  return Channel::from_kraus(std::move(ks));
}

ProjectiveRoutine projective_channel_routine(std::vector<ComplexMatrix> projectors,
                                             std::vector<ComplexMatrix> unitaries) {
  if (projectors.empty() || projectors.size() != unitaries.size()) {
    throw ConfigError("projective_channel_routine: need one unitary per projector");
  }
  const Eigen::Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    if (p.rows() != d || p.cols() != d || unitaries[i].rows() != d || unitaries[i].cols() != d) {
      throw ShapeError("projective_channel_routine: inconsistent dimensions");
    }
    if (max_abs(p * p - p) > 1e-10 || !is_hermitian(p, 1e-10)) {
      throw ConfigError("projective_channel_routine: P_" + std::to_string(i) + " is not a projector");
    }
    if (!is_unitary(unitaries[i], 1e-10)) {
      throw ConfigError("projective_channel_routine: U_" + std::to_string(i) + " is not unitary");
    }
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > 1e-10) {
    throw ConfigError("projective_channel_routine: projectors do not sum to identity");
  }
  return ProjectiveRoutine{std::move(projectors), std::move(unitaries)};
}

Channel projective_routine_channel(const ProjectiveRoutine& r) {
  const int d = static_cast<int>(r.projectors.front().rows());
  return choi_of_map(
      [&](const ComplexMatrix& x) {
        ComplexMatrix acc = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < r.projectors.size(); ++i) {
          const ComplexMatrix up = r.unitaries[i] * r.projectors[i];
          acc += up * x * up.adjoint();
        }
        return acc;
      },
      d, d);
}

ProjectiveRoutine reset_routine(int dim) {
  std::vector<ComplexMatrix> ps, us;
  const ComplexMatrix shift = gate_shift(dim);
  ComplexMatrix power = ComplexMatrix::Identity(dim, dim);
  for (int k = 0; k < dim; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(k, k) = 1.0;
    ps.push_back(std::move(p));
    us.push_back(power);
    power = shift * power;
  }
  return projective_channel_routine(std::move(ps), std::move(us));
}

// -------------------------------------------------------------------- POVM

void POVMSpec::validate() const {
  if (elements.empty()) throw InvalidChannelError("POVM: no elements");
  const Eigen::Index d = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const ComplexMatrix& o = elements[i];
    if (o.rows() != d || o.cols() != d) throw ShapeError("POVM: elements have different shapes");
    if (!is_hermitian(o, 1e-10)) throw InvalidChannelError("POVM: O_" + std::to_string(i) + " not Hermitian");
    if (hermitian_eigenvalues(o).minCoeff() < -kStateTol) {
      throw InvalidChannelError("POVM: O_" + std::to_string(i) + " has a negative eigenvalue");
    }
    sum += o;
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > 1e-10) {
    throw InvalidChannelError("POVM: elements do not sum to identity");
  }
}

PovmRoutine povm_to_routine(const POVMSpec& povm) {
  povm.validate();
  KrausSet ks;
  for (const auto& o : povm.elements) ks.operators.push_back(hermitian_sqrt(hermitian_part(o)));
  PovmRoutine pr;
  pr.routine = extended_qudit_routine(ks);
  pr.num_outcomes = static_cast<int>(povm.elements.size());
  return pr;
}

std::vector<PovmOutcome> povm_execute(const PovmRoutine& r, const DensityMatrix& rho) {
  std::vector<PovmOutcome> out(static_cast<std::size_t>(r.num_outcomes));
  for (int i = 0; i < r.num_outcomes; ++i) out[i].outcome = i;
  const int d = r.routine.data_dim;
  for (auto& b : routine_branches(r.routine, rho.matrix())) {
    PovmOutcome& o = out[static_cast<std::size_t>(b.outcome)];
    o.probability = b.probability;
    if (b.probability > 0.0) o.state = b.embedded.topLeftCorner(d, d) / b.probability;
  }
  return out;
}

Channel choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, int dim_in,
                    int dim_out) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim_in) * dim_out;
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < dim_in; ++a) {
    for (int ap = 0; ap < dim_in; ++ap) {
      ComplexMatrix e = ComplexMatrix::Zero(dim_in, dim_in);
      e(a, ap) = 1.0;
      const ComplexMatrix out = map(e);
      for (int b = 0; b < dim_out; ++b)
        for (int bp = 0; bp < dim_out; ++bp)
          choi(static_cast<Eigen::Index>(b) * dim_in + a, static_cast<Eigen::Index>(bp) * dim_in + ap) =
              out(b, bp) / static_cast<double>(dim_in);
    }
  }
  return Channel::from_choi(hermitian_part(choi), dim_in, dim_out);
}

}  // namespace channelforge
