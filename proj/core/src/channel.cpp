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

#include "channelforge/channel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <string>

#include "channelforge/errors.hpp"

namespace channelforge {

// ---------------------------------------------------------------- KrausSet

int KrausSet::dim_in() const {
  return operators.empty() ? 0 : static_cast<int>(operators.front().cols());
}

int KrausSet::dim_out() const {
  return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
}

double KrausSet::completeness_residual() const {
  if (operators.empty()) return 1.0;
  ComplexMatrix acc = ComplexMatrix::Zero(dim_in(), dim_in());
  for (const auto& k : operators) acc.noalias() += k.adjoint() * k;
  return max_abs(acc - ComplexMatrix::Identity(dim_in(), dim_in()));
}

// ----------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw ShapeError("DensityMatrix: matrix must be square and non-empty");
  }
  if (!is_hermitian(m_, kHermitianTol)) {
    throw InvalidChannelError("DensityMatrix: not Hermitian within 1e-12");
  }
  m_ = hermitian_part(m_);
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw InvalidChannelError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const double min_ev = hermitian_eigenvalues(m_).minCoeff();
  if (min_ev < -kStateTol) {
    throw InvalidChannelError("DensityMatrix: negative eigenvalue " +
                              std::to_string(min_ev));
  }
}

DensityMatrix DensityMatrix::from_ket(const ComplexVector& ket) {
  const double n = ket.norm();
  if (n == 0.0) throw InvalidChannelError("DensityMatrix::from_ket: zero vector");
  ComplexVector k = ket / n;
  return DensityMatrix(k * k.adjoint());
}

DensityMatrix DensityMatrix::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw ShapeError("DensityMatrix::basis: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

// ----------------------------------------------------------------- Channel

struct Channel::State {
  int dim_in = 0;
  int dim_out = 0;
  ComplexMatrix choi;
  std::optional<KrausSet> kraus;

  std::once_flag kraus_once;
  std::once_flag superop_once;
  std::once_flag rank_once;
  Superoperator superop;
  int rank = -1;
};

Channel::Channel(std::shared_ptr<State> s) : s_(std::move(s)) {}

namespace {

void check_choi_shape(const ComplexMatrix& choi, int dim_in, int dim_out) {
  if (dim_in <= 0 || dim_out <= 0) {
    throw ShapeError("Channel: dimensions must be positive");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dim_in) * dim_out;
  if (choi.rows() != n || choi.cols() != n) {
    throw ShapeError("Channel: Choi matrix must be " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
}

ComplexMatrix output_partial_trace(const ComplexMatrix& choi, int dim_in, int dim_out) {
  const int dims[2] = {dim_out, dim_in};
  const int keep[1] = {1};
  return partial_trace(choi, dims, keep);
}

KrausSet eigen_kraus(const ComplexMatrix& choi, int dim_in, int dim_out) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(choi));
  KrausSet ks;
  // descending weight order
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double w = es.eigenvalues()(i);
    if (w <= kRankCutoff) continue;
    const double scale = std::sqrt(w * dim_in);
    ComplexMatrix k(dim_out, dim_in);
    for (int b = 0; b < dim_out; ++b)
      for (int a = 0; a < dim_in; ++a) k(b, a) = scale * es.eigenvectors()(b * dim_in + a, i);
    ks.operators.push_back(std::move(k));
  }
  if (ks.operators.empty()) {
    ks.operators.push_back(ComplexMatrix::Zero(dim_out, dim_in));
  }
  return ks;
}

}  // namespace

Channel Channel::from_choi_unchecked(ComplexMatrix choi, int dim_in, int dim_out) {
  check_choi_shape(choi, dim_in, dim_out);
  auto s = std::make_shared<State>();
  s->dim_in = dim_in;
  s->dim_out = dim_out;
  s->choi = std::move(choi);
  return Channel(std::move(s));
}

Channel Channel::from_choi(ComplexMatrix choi, int dim_in, int dim_out) {
  check_choi_shape(choi, dim_in, dim_out);
  Channel ch = from_choi_unchecked(std::move(choi), dim_in, dim_out);
  const CptpReport rep = validate_cptp(ch);
  if (!rep.passed()) {
    throw InvalidChannelError(
        "Channel: Choi matrix is not CPTP (min eigenvalue " +
        std::to_string(rep.min_eigenvalue) + ", trace-preservation residual " +
        std::to_string(rep.tp_residual) + ", hermiticity residual " +
        std::to_string(rep.hermiticity_residual) + ")");
  }
  ch.s_->choi = hermitian_part(ch.s_->choi);
  return ch;
}

Channel Channel::from_kraus(KrausSet ks) {
  if (ks.operators.empty()) throw ShapeError("kraus_to_choi: empty Kraus set");
  const int din = ks.dim_in();
  const int dout = ks.dim_out();
  for (const auto& k : ks.operators) {
    if (k.rows() != dout || k.cols() != din) {
      throw ShapeError("kraus_to_choi: Kraus operators have inconsistent shapes");
    }
  }
  const double residual = ks.completeness_residual();
  if (residual > 1e-10) {
    throw CompletenessError(
        "kraus_to_choi: Kraus set is not trace preserving, ||sum K^dagger K - 1|| = " +
            std::to_string(residual),
        residual);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(din) * dout;
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (const auto& k : ks.operators) {
    ComplexVector v = vectorize(k);
    choi.noalias() += v * v.adjoint();
  }
  choi /= static_cast<double>(din);
  auto s = std::make_shared<State>();
  s->dim_in = din;
  s->dim_out = dout;
  s->choi = hermitian_part(choi);
  s->kraus = std::move(ks);
  return Channel(std::move(s));
}

Channel Channel::identity(int dim) {
  return from_kraus(KrausSet{{ComplexMatrix::Identity(dim, dim)}});
}

Channel Channel::unitary(const ComplexMatrix& u) {
  if (!is_unitary(u, 1e-10)) throw InvalidChannelError("Channel::unitary: matrix is not unitary");
  return from_kraus(KrausSet{{u}});
}

int Channel::dim_in() const { return s_->dim_in; }
int Channel::dim_out() const { return s_->dim_out; }
const ComplexMatrix& Channel::choi() const { return s_->choi; }

int Channel::kraus_rank() const {
  std::call_once(s_->rank_once, [&] { s_->rank = hermitian_rank(s_->choi, kRankCutoff); });
  return s_->rank;
}

const KrausSet& Channel::kraus() const {
  std::call_once(s_->kraus_once, [&] {
    if (!s_->kraus) s_->kraus = eigen_kraus(s_->choi, s_->dim_in, s_->dim_out);
  });
  return *s_->kraus;
}

const Superoperator& Channel::superop() const {
  std::call_once(s_->superop_once, [&] {
    s_->superop.dim_in = s_->dim_in;
    s_->superop.dim_out = s_->dim_out;
    s_->superop.matrix =
        unreshuffle(s_->choi * static_cast<double>(s_->dim_in), s_->dim_out, s_->dim_in);
  });
  return s_->superop;
}

// -------------------------------------------------------------- operations

Channel kraus_to_choi(const KrausSet& ks) { return Channel::from_kraus(ks); }

KrausSet choi_to_kraus(const Channel& ch) {
  return eigen_kraus(ch.choi(), ch.dim_in(), ch.dim_out());
}

Superoperator kraus_to_superop(const KrausSet& ks) {
  Superoperator s;
  s.dim_in = ks.dim_in();
  s.dim_out = ks.dim_out();
  s.matrix = ComplexMatrix::Zero(static_cast<Eigen::Index>(s.dim_out) * s.dim_out,
                                 static_cast<Eigen::Index>(s.dim_in) * s.dim_in);
  for (const auto& k : ks.operators) s.matrix += kron(k, k.conjugate());
  return s;
}

Channel superop_to_channel(const Superoperator& s) {
  ComplexMatrix choi = reshuffle(s.matrix, s.dim_out, s.dim_in) / static_cast<double>(s.dim_in);
  return Channel::from_choi(std::move(choi), s.dim_in, s.dim_out);
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.dim_out() != second.dim_in()) {
    throw ShapeError("compose: first.dim_out (" + std::to_string(first.dim_out()) +
                     ") != second.dim_in (" + std::to_string(second.dim_in()) + ")");
  }
  Superoperator s{second.superop().matrix * first.superop().matrix, first.dim_in(),
                  second.dim_out()};
  return superop_to_channel(s);
}

Channel compose_sequence(std::span<const Channel> in_order) {
  if (in_order.empty()) throw ShapeError("compose_sequence: empty sequence");
  Channel acc = in_order.front();
  for (std::size_t i = 1; i < in_order.size(); ++i) acc = compose(in_order[i], acc);
  return acc;
}

Channel mix(std::span<const Channel> channels, std::span<const double> probs) {
  if (channels.empty() || channels.size() != probs.size()) {
    throw ShapeError("mix: need one probability per channel");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw InvalidChannelError("mix: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidChannelError("mix: probabilities sum to " + std::to_string(total));
  }
  const int din = channels.front().dim_in();
  const int dout = channels.front().dim_out();
  ComplexMatrix choi = ComplexMatrix::Zero(channels.front().choi().rows(),
                                           channels.front().choi().cols());
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].dim_in() != din || channels[k].dim_out() != dout) {
      throw ShapeError("mix: channels have different dimensions");
    }
    choi += probs[k] * channels[k].choi();
  }
  return Channel::from_choi(std::move(choi), din, dout);
}

Channel tensor(const Channel& a, const Channel& b) {
  KrausSet ks;
  for (const auto& ka : a.kraus().operators)
    for (const auto& kb : b.kraus().operators) ks.operators.push_back(kron(ka, kb));
  return Channel::from_kraus(std::move(ks));
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw ShapeError("apply: state dimension " + std::to_string(rho.dim()) +
                     " != channel input dimension " + std::to_string(ch.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus().operators) out.noalias() += k * rho.matrix() * k.adjoint();
  return DensityMatrix(hermitian_part(out));
}

namespace {

// Eigenvalues this small are eigensolver roundoff; their square roots would
// otherwise leak ~1e-8 into the fidelity.
constexpr double kSqrtFloor = 1e-14;

ComplexMatrix clamped_sqrt(const ComplexMatrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < -kStateTol) {
    throw InvalidChannelError(std::string(what) + ": eigenvalue " +
                              std::to_string(ev.minCoeff()) + " below -1e-10");
  }
  RealVector s = ev.unaryExpr([](double x) { return x > kSqrtFloor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// tr|sqrt(A) sqrt(B)| from singular values; avoids the square-root loss of
// precision on near-zero eigenvalues of sqrt(A) B sqrt(A).
double nuclear_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("fidelity: operands have different shapes");
  }
  const ComplexMatrix sa = clamped_sqrt(a, "fidelity");
  const ComplexMatrix sb = clamped_sqrt(b, "fidelity");
  const double t = nuclear_norm(sa * sb);
  return std::clamp(t * t, 0.0, 1.0);
}

double choi_fidelity(const Channel& a, const Channel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw ShapeError("choi_fidelity: channels have different dimensions");
  }
  return uhlmann_fidelity(a.choi(), b.choi());
}

FidelityEvaluator::FidelityEvaluator(const ComplexMatrix& target) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(target));
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < -kStateTol) {
    throw InvalidChannelError("FidelityEvaluator: target is not positive semidefinite");
  }
  const int rank = static_cast<int>((ev.array() > kRankCutoff).count());
  if (rank == 1) {
    pure_ = true;
    const Eigen::Index top = ev.size() - 1;
    ket_ = es.eigenvectors().col(top) * std::sqrt(ev(top));
  }
  RealVector s = ev.unaryExpr([](double x) { return x > kSqrtFloor ? std::sqrt(x) : 0.0; });
  sqrt_target_ = es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double FidelityEvaluator::operator()(const ComplexMatrix& state) const {
  if (state.rows() != sqrt_target_.rows()) {
    throw ShapeError("FidelityEvaluator: state has the wrong dimension");
  }
  if (pure_) {
    return std::clamp((ket_.adjoint() * state * ket_)(0, 0).real(), 0.0, 1.0);
  }
  const double t = nuclear_norm(sqrt_target_ * clamped_sqrt(state, "FidelityEvaluator"));
  return std::clamp(t * t, 0.0, 1.0);
}

CptpReport validate_cptp(const Channel& ch, double tol) {
  CptpReport rep;
  rep.tolerance = tol;
  const ComplexMatrix& c = ch.choi();
  rep.hermiticity_residual = max_abs(c - c.adjoint());
  rep.min_eigenvalue = hermitian_eigenvalues(c).minCoeff();
  const ComplexMatrix reduced = output_partial_trace(c, ch.dim_in(), ch.dim_out());
  rep.tp_residual = max_abs(
      reduced - ComplexMatrix::Identity(ch.dim_in(), ch.dim_in()) / static_cast<double>(ch.dim_in()));
  return rep;
}

double choi_purity(const Channel& ch) { return (ch.choi() * ch.choi()).trace().real(); }

}  // namespace channelforge
