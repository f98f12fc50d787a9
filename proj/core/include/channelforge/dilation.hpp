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

#include <functional>
#include <optional>
#include <vector>

#include "channelforge/channel.hpp"

namespace channelforge {

/// Unitary Lambda on ancilla (x) system with <i,k|Lambda|0,l> = <k|K_i|l>.
/// The ancilla factor is the most significant one and starts in |0>.
struct StinespringDilation {
  ComplexMatrix unitary;
  int ancilla_dim = 1;
  int dim_in = 0;
  int dim_out = 0;

  /// Ancilla qubits needed, log2(ancilla_dim).
  double overhead() const;
};

/// Builds Lambda from the operators as given (r = ks.size()); the columns
/// beyond the embedded input are completed by pivoted Gram-Schmidt.
/// Requires dim_in <= dim_out. Throws CompletenessError on an invalid set.
StinespringDilation stinespring_dilate(const KrausSet& ks);

/// tr_anc[Lambda (|0><0| (x) rho) Lambda^dagger].
DensityMatrix dilation_execute(const StinespringDilation& dil, const DensityMatrix& rho);

/// Same map applied to an arbitrary operator (linear extension).
ComplexMatrix dilation_execute_operator(const StinespringDilation& dil, const ComplexMatrix& x);

/// Choi state of the dilation's action, obtained by executing it.
Channel dilation_channel(const StinespringDilation& dil);

/// Extended-qudit routine: unitary on D levels, block projective measurement,
/// per-outcome correction. Branch i stems from Kraus operator kraus_index[i]
/// and occupies levels [block_start[i], block_start[i] + branch_ranks[i]).
struct QuditRoutine {
  int total_dim = 0;
  int data_dim = 0;
  ComplexMatrix unitary;
  std::vector<int> block_start;
  std::vector<int> branch_ranks;
  std::vector<int> kraus_index;
  std::vector<ComplexMatrix> projectors;
  std::vector<ComplexMatrix> corrections;
};

QuditRoutine extended_qudit_routine(const KrausSet& ks);

struct RoutineBranch {
  int outcome = 0;
  double probability = 0.0;
  /// Unnormalized D x D state W_i P_i Lambda (rho (+) 0) Lambda^dagger P_i W_i^dagger.
  ComplexMatrix embedded;
};

/// One branch per measurement outcome, for an arbitrary input operator on
/// the data subspace.
std::vector<RoutineBranch> routine_branches(const QuditRoutine& r, const ComplexMatrix& x);

/// Outcome erased: D x D sum of the branches.
ComplexMatrix routine_execute_embedded(const QuditRoutine& r, const ComplexMatrix& x);

/// Data-subspace block of the erased output.
DensityMatrix routine_execute(const QuditRoutine& r, const DensityMatrix& rho);

Channel routine_channel(const QuditRoutine& r);

/// log2(D) - log2(d).
double qudit_overhead(const QuditRoutine& r);

struct MixedUnitary {
  std::vector<ComplexMatrix> unitaries;
  std::vector<double> probs;
};

/// Pauli decomposition of a Pauli-diagonal qubit-register channel; nullopt
/// for anything else.
std::optional<MixedUnitary> mixed_unitary_decompose(const Channel& ch);

/// Exact mixture sum_k p_k U_k rho U_k^dagger.
Channel mixed_unitary_channel(const MixedUnitary& mu);

/// Measure {P_i}, apply U_i, erase the outcome.
struct ProjectiveRoutine {
  std::vector<ComplexMatrix> projectors;
  std::vector<ComplexMatrix> unitaries;
};

/// Checks P_i^2 = P_i, sum P_i = 1 and U_i unitary within 1e-10.
ProjectiveRoutine projective_channel_routine(std::vector<ComplexMatrix> projectors,
                                             std::vector<ComplexMatrix> unitaries);

Channel projective_routine_channel(const ProjectiveRoutine& r);

/// Reset as computational-basis measurement plus X_D^k rotation to |0>.
ProjectiveRoutine reset_routine(int dim);

struct POVMSpec {
  std::vector<ComplexMatrix> elements;

  /// O_i >= -1e-10 and sum O_i = 1 within 1e-10; throws InvalidChannelError.
  void validate() const;
};

struct PovmOutcome {
  int outcome = 0;
  double probability = 0.0;
  /// Normalized post-measurement state sqrt(O_i) rho sqrt(O_i) / p_i, or
  /// empty when p_i == 0.
  ComplexMatrix state;
};

/// The extended-qudit routine of the Kraus set {sqrt(O_i)} with the outcome
/// retained.
struct PovmRoutine {
  QuditRoutine routine;
  int num_outcomes = 0;
};

PovmRoutine povm_to_routine(const POVMSpec& povm);

std::vector<PovmOutcome> povm_execute(const PovmRoutine& r, const DensityMatrix& rho);

/// Choi state of a linear map given on operators; `map` receives |a><a'|.
Channel choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, int dim_in,
                    int dim_out);

}  // namespace channelforge
