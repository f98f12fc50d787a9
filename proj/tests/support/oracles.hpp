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

// Reference implementations used only by the tests. They are written from
// definitions with explicit index loops and share no code with the library.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace cftest {

using CMat = Eigen::MatrixXcd;
using cd = std::complex<double>;

CMat ket_bra(int d, int a, int b);
CMat pauli_matrix(int k);  // 0..3 = I, X, Y, Z

/// sum_k K rho K^dagger.
CMat apply_kraus(const std::vector<CMat>& ks, const CMat& rho);

/// (1/din) sum_{a,b} E(|a><b|) (x) |a><b|, output factor first.
CMat choi_oracle(const std::vector<CMat>& ks, int din);

/// (tr sqrt(sqrt(a) b sqrt(a)))^2 from eigendecompositions.
double fidelity_oracle(const CMat& a, const CMat& b);

/// Full-space operator acting as `op` on the factors `targets` (in order)
/// of a register with factor dimensions `dims`, built entry by entry.
CMat embed(const CMat& op, const std::vector<int>& dims, const std::vector<int>& targets);

/// Partial trace by explicit summation, kept factors in ascending order.
CMat partial_trace_oracle(const CMat& m, const std::vector<int>& dims, const std::vector<int>& keep);

CMat kron2(const CMat& a, const CMat& b);

CMat haar_unitary(int d, std::mt19937_64& rng);
/// Kraus operators from the row blocks of a Haar isometry.
std::vector<CMat> random_kraus(int din, int dout, int rank, std::mt19937_64& rng);
CMat random_state(int d, int rank, std::mt19937_64& rng);
std::vector<double> random_distribution(int n, std::mt19937_64& rng);

std::vector<CMat> ad_kraus(double gamma);
std::vector<CMat> depolarizing_kraus(double p);
std::vector<CMat> dephasing_kraus(double p);

/// Closed-form fidelities of the two bit-flip circuits with white gate noise.
double fa_closed(double P, double p, double q);
double fb_closed(double P, double p, double q);

/// p~_i = sum_{j,k} q_a lambda_j p_k over sigma_a sigma_j sigma_k ~ sigma_i,
/// with the product identified by matrix comparison.
std::vector<double> pauli_triple_sum(const std::vector<double>& q, const std::vector<double>& lambda,
                                     const std::vector<double>& p);

double max_abs_diff(const CMat& a, const CMat& b);

}  // namespace cftest
