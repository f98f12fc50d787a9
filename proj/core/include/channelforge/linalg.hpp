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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace channelforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateTol = 1e-10;
inline constexpr double kRankCutoff = 1e-12;

/// Largest absolute entry, the max-norm used throughout for residuals.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

/// (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// Eigendecompose, clamp negative eigenvalues to zero and rebuild with
/// square-rooted eigenvalues. Throws ShapeError if `m` is not Hermitian
/// within 1e-10.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix in ascending order.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Numerical rank of a Hermitian PSD matrix (eigenvalues above `cutoff`).
int hermitian_rank(const ComplexMatrix& m, double cutoff = kRankCutoff);

/// Row-major vectorization: |rho>> = sum_ij rho_ij |i,j>.
ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, int rows, int cols);

/// Index permutation exchanging the Liouville and Choi layouts.
///
/// For a superoperator S of shape (d_out^2 x d_in^2) acting on row-major
/// vectorized operators, the result R has shape (d_out*d_in)^2 with
/// R[(b,a),(b',a')] = S[(b,b'),(a,a')]. Applying the map with the output
/// and input dimensions swapped in the reverse direction undoes it; for
/// d_out == d_in it is an involution.
ComplexMatrix reshuffle(const ComplexMatrix& m, int dim_out, int dim_in);

/// Inverse of reshuffle(m, dim_out, dim_in): Choi layout back to Liouville.
ComplexMatrix unreshuffle(const ComplexMatrix& m, int dim_out, int dim_in);

/// Square-matrix variant; infers d from m.rows() == d*d. Throws ShapeError
/// when the size is not a perfect square.
ComplexMatrix superop_choi_reshuffle(const ComplexMatrix& m);

/// Partial trace of an operator on a tensor product with factor dimensions
/// `dims`, keeping the factors listed in `keep` (in ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

/// Reorders tensor factors: factor i of the result is factor new_order[i]
/// of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> new_order);

/// sum_k K rho K^dagger with every K acting on the factors `targets` (in the
/// given order). A dimension-changing K is allowed for a single target; the
/// resulting factor dimensions are written to `out_dims` when non-null.
ComplexMatrix apply_on_subsystems(const ComplexMatrix& rho, std::span<const int> dims,
                                  std::span<const int> targets,
                                  std::span<const ComplexMatrix> kraus,
                                  std::vector<int>* out_dims = nullptr);

/// Complete a set of orthonormal columns to a unitary of size `total`.
///
/// Remaining columns are seeded from identity columns; at each step the
/// candidate with the largest residual after projecting out the current
/// basis is chosen, orthogonalized twice and normalized.
ComplexMatrix complete_to_unitary(const ComplexMatrix& columns, int total);

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int dim, std::mt19937_64& rng);

/// Random density matrix of the given rank (Ginibre construction).
ComplexMatrix random_density_matrix(int dim, int rank, std::mt19937_64& rng);

/// Integer power of d that equals n, or -1.
int integer_root(std::int64_t n, int degree);

}  // namespace channelforge
