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

#include <span>
#include <vector>

#include "channelforge/channel.hpp"

namespace channelforge {

// Single-qubit Pauli matrices indexed 0..3 as I, X, Y, Z.
ComplexMatrix pauli(int index);

// n-qubit Pauli string for a base-4 index; the first qubit is the most
// significant digit.
ComplexMatrix pauli_string(int index, int num_qubits);

// Index of the Pauli string proportional to pauli_string(a) * pauli_string(b).
int pauli_product_index(int a, int b, int num_qubits);

// Probability distribution over the n-qubit Pauli group, length 4^n.
struct PauliDiagonalSpec {
  std::vector<double> probs;

  int num_qubits() const;
  // Throws InvalidChannelError unless probs >= 0, sum to 1 within 1e-12 and
  // the length is a power of four.
  void validate() const;

  static PauliDiagonalSpec identity(int num_qubits);
  // Weight p on identity, (1-p)/(4^n-1) on every other Pauli string.
  static PauliDiagonalSpec depolarizing(double p, int num_qubits = 1);
};

// Kraus {sqrt(p) 1, sqrt(1-p) Z}.
Channel dephasing(double p);

// Kraus weights p on identity and (1-p)/3 on each Pauli.
Channel depolarizing(double p);

// rho -> q rho + (1-q) 1/2, the same family as depolarizing with
// p = (3q+1)/4.
Channel white_noise(double q);

KrausSet amplitude_damping_kraus(double gamma);
Channel amplitude_damping(double gamma);

// Kraus {sqrt(p) 1, sqrt(1-p) X}.
Channel bit_flip(double p);

Channel pauli_diagonal(const PauliDiagonalSpec& spec);

// sqrt(q) 1 plus three rotations sqrt((1-q)/3) (1 + i sigma_k)/sqrt(2).
Channel rotation_noise_b(double q);

// d -> d+1: rho -> p (rho (+) 0) + (1-p) |e><e|, e the added level.
Channel erasure(double p, int dim);

// Prepare |0> regardless of input.
Channel reset_channel(int dim);

// Pauli-basis weights <<sigma_i|Phi|sigma_i>> of an n-qubit channel.
std::vector<double> pauli_probabilities(const Channel& ch);

// True when the Choi state is diagonal in the Pauli (Bell-type) basis.
bool is_pauli_diagonal(const Channel& ch, double tol = 1e-12);

}  // namespace channelforge
