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

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "channelforge/linalg.hpp"

namespace channelforge {

/// Kraus operators {K_i}, each of shape dim_out x dim_in. Weights are
/// absorbed into the operators.
struct KrausSet {
  std::vector<ComplexMatrix> operators;

  int dim_in() const;
  int dim_out() const;
  std::size_t size() const { return operators.size(); }

  /// ||sum_i K_i^dagger K_i - 1||_max.
  double completeness_residual() const;
};

/// Liouville matrix acting on row-major vectorized operators,
/// S = sum_i K_i (x) conj(K_i), shape dim_out^2 x dim_in^2.
struct Superoperator {
  ComplexMatrix matrix;
  int dim_in = 0;
  int dim_out = 0;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-10) and PSD (-1e-10).
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_ket(const ComplexVector& ket);
  static DensityMatrix basis(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Outcome of a CPTP check on a Choi matrix.
struct CptpReport {
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;
  double hermiticity_residual = 0.0;
  double tolerance = 1e-10;

  bool positive() const { return min_eigenvalue >= -tolerance; }
  bool trace_preserving() const { return tp_residual <= tolerance; }
  bool hermitian() const { return hermiticity_residual <= tolerance; }
  bool passed() const { return positive() && trace_preserving() && hermitian(); }
};

/// A completely positive map held as its trace-one Choi state
/// Phi = (E (x) id)(|Phi+><Phi+|), output factor first. Kraus and
/// Liouville views are derived lazily and cached; the value is immutable
/// and cheap to copy.
class Channel {
 public:
  /// Validated construction. Throws InvalidChannelError on a non-CPTP Choi.
  static Channel from_choi(ComplexMatrix choi, int dim_in, int dim_out);

  /// No CPTP validation; only shapes are checked. Used to inspect
  /// externally supplied data with validate_cptp.
  static Channel from_choi_unchecked(ComplexMatrix choi, int dim_in, int dim_out);

  /// Same as kraus_to_choi; keeps `ks` as the cached Kraus view.
  static Channel from_kraus(KrausSet ks);

  static Channel identity(int dim);
  static Channel unitary(const ComplexMatrix& u);

  int dim_in() const;
  int dim_out() const;

  /// Trace-one Choi state, (dim_out*dim_in) square.
  const ComplexMatrix& choi() const;

  /// Numerical rank of the Choi state (cutoff 1e-12).
  int kraus_rank() const;

  /// The Kraus set the channel was built from, or the eigen-decomposition
  /// of the Choi state when it was built from a Choi matrix.
  const KrausSet& kraus() const;

  const Superoperator& superop() const;

 private:
  struct State;
  explicit Channel(std::shared_ptr<State> s);
  std::shared_ptr<State> s_;
};

/// Choi state of a Kraus set. Throws CompletenessError carrying
/// ||sum K^dagger K - 1|| when the set is not trace preserving (1e-10).
Channel kraus_to_choi(const KrausSet& ks);

/// Kraus operators K_i = sqrt(d_in * p_i) Omega_i from the eigenpairs of the
/// Choi state; eigenvalues at or below 1e-12 are dropped.
KrausSet choi_to_kraus(const Channel& ch);

Superoperator kraus_to_superop(const KrausSet& ks);

/// Channel described by a Liouville matrix (validated).
Channel superop_to_channel(const Superoperator& s);

/// second o first.
Channel compose(const Channel& second, const Channel& first);

/// Left-to-right list means the first element acts first.
Channel compose_sequence(std::span<const Channel> in_order);

/// Convex combination sum_k p_k E_k. Probabilities must be non-negative
/// and sum to one within 1e-12.
Channel mix(std::span<const Channel> channels, std::span<const double> probs);

/// Tensor product channel a (x) b.
Channel tensor(const Channel& a, const Channel& b);

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

/// Uhlmann fidelity (tr sqrt(sqrt(A) B sqrt(A)))^2 of two trace-one PSD
/// matrices. Eigenvalues in [-1e-10, 0) are clamped; anything more negative
/// raises InvalidChannelError.
double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// Choi fidelity between two channels of equal shape, in [0, 1].
double choi_fidelity(const Channel& a, const Channel& b);

/// Repeated fidelity evaluation against one fixed state; caches sqrt(target).
class FidelityEvaluator {
 public:
  explicit FidelityEvaluator(const ComplexMatrix& target);
  double operator()(const ComplexMatrix& state) const;
  int dim() const { return static_cast<int>(sqrt_target_.rows()); }

 private:
  ComplexMatrix sqrt_target_;
  bool pure_ = false;
  ComplexVector ket_;
};

CptpReport validate_cptp(const Channel& ch, double tol = 1e-10);

/// Purity tr(Phi^2) of the Choi state.
double choi_purity(const Channel& ch);

}  // namespace channelforge
