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

#include "channelforge/noise.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "channelforge/errors.hpp"

namespace channelforge {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidChannelError(std::string(name) + ": parameter " + std::to_string(p) +
                              " outside [0, 1]");
  }
}

// I, X, Y, Z -> x + 2z symplectic code; the map is its own inverse.
constexpr int kSymplectic[4] = {0, 1, 3, 2};

ComplexMatrix pauli_basis(int num_qubits) {
  const int n4 = 1 << (2 * num_qubits);
  const int d = 1 << num_qubits;
  ComplexMatrix b(d * d, n4);
  for (int i = 0; i < n4; ++i) {
    b.col(i) = vectorize(pauli_string(i, num_qubits)) / std::sqrt(static_cast<double>(d));
  }
  return b;
}

int qubits_of_channel(const Channel& ch) {
  if (ch.dim_in() != ch.dim_out()) throw ShapeError("Pauli analysis needs dim_in == dim_out");
  int q = 0;
  while ((1 << q) < ch.dim_in()) ++q;
  if ((1 << q) != ch.dim_in()) throw ShapeError("Pauli analysis needs a qubit register");
  return q;
}

}  // namespace

ComplexMatrix pauli(int index) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw ShapeError("pauli: index must be 0..3");
  }
  return m;
}

ComplexMatrix pauli_string(int index, int num_qubits) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = num_qubits - 1; q >= 0; --q) {
    const int digit = (index >> (2 * q)) & 3;
    out = kron(out, pauli(digit));
  }
  return out;
}

int pauli_product_index(int a, int b, int num_qubits) {
  int out = 0;
  for (int q = 0; q < num_qubits; ++q) {
    const int da = (a >> (2 * q)) & 3;
    const int db = (b >> (2 * q)) & 3;
    out |= kSymplectic[kSymplectic[da] ^ kSymplectic[db]] << (2 * q);
  }
  return out;
}

int PauliDiagonalSpec::num_qubits() const {
  int n = 0;
  while ((std::size_t{1} << (2 * n)) < probs.size()) ++n;
  return n;
}

void PauliDiagonalSpec::validate() const {
  const int n = num_qubits();
  if (probs.empty() || (std::size_t{1} << (2 * n)) != probs.size()) {
    throw InvalidChannelError("PauliDiagonalSpec: length must be 4^n");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw InvalidChannelError("PauliDiagonalSpec: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidChannelError("PauliDiagonalSpec: probabilities sum to " + std::to_string(total));
  }
}

PauliDiagonalSpec PauliDiagonalSpec::identity(int num_qubits) {
  PauliDiagonalSpec s;
  s.probs.assign(std::size_t{1} << (2 * num_qubits), 0.0);
  s.probs[0] = 1.0;
  return s;
}

PauliDiagonalSpec PauliDiagonalSpec::depolarizing(double p, int num_qubits) {
  require_probability(p, "PauliDiagonalSpec::depolarizing");
  const std::size_t n4 = std::size_t{1} << (2 * num_qubits);
  PauliDiagonalSpec s;
  s.probs.assign(n4, (1.0 - p) / static_cast<double>(n4 - 1));
  s.probs[0] = p;
  return s;
}

Channel dephasing(double p) {
  require_probability(p, "dephasing");
  return Channel::from_kraus({{std::sqrt(p) * pauli(0), std::sqrt(1.0 - p) * pauli(3)}});
}

Channel depolarizing(double p) {
  require_probability(p, "depolarizing");
  const double w = std::sqrt((1.0 - p) / 3.0);
  return Channel::from_kraus(
      {{std::sqrt(p) * pauli(0), w * pauli(1), w * pauli(2), w * pauli(3)}});
}

Channel white_noise(double q) {
  require_probability(q, "white_noise");
  return depolarizing((3.0 * q + 1.0) / 4.0);
}

KrausSet amplitude_damping_kraus(double gamma) {
  require_probability(gamma, "amplitude_damping");
  ComplexMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return {{k0, k1}};
}

Channel amplitude_damping(double gamma) { return Channel::from_kraus(amplitude_damping_kraus(gamma)); }

Channel bit_flip(double p) {
  require_probability(p, "bit_flip");
  return Channel::from_kraus({{std::sqrt(p) * pauli(0), std::sqrt(1.0 - p) * pauli(1)}});
}

Channel pauli_diagonal(const PauliDiagonalSpec& spec) {
  spec.validate();
  const int n = spec.num_qubits();
  KrausSet ks;
  for (std::size_t i = 0; i < spec.probs.size(); ++i) {
    if (spec.probs[i] == 0.0) continue;
    ks.operators.push_back(std::sqrt(spec.probs[i]) * pauli_string(static_cast<int>(i), n));
  }
  return Channel::from_kraus(std::move(ks));
}

Channel rotation_noise_b(double q) {
  require_probability(q, "rotation_noise_b");
  const Complex i(0.0, 1.0);
  const double w = std::sqrt((1.0 - q) / 3.0) / std::sqrt(2.0);
  KrausSet ks{{std::sqrt(q) * pauli(0)}};
  for (int k = 1; k <= 3; ++k) ks.operators.push_back(w * (pauli(0) + i * pauli(k)));
  return Channel::from_kraus(std::move(ks));
}

Channel erasure(double p, int dim) {
  require_probability(p, "erasure");
  if (dim < 1) throw ShapeError("erasure: dimension must be positive");
  KrausSet ks;
  ks.operators.push_back(std::sqrt(p) * ComplexMatrix::Identity(dim + 1, dim));
  for (int k = 0; k < dim; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(dim + 1, dim);
    m(dim, k) = std::sqrt(1.0 - p);
    ks.operators.push_back(std::move(m));
  }
  return Channel::from_kraus(std::move(ks));
}

Channel reset_channel(int dim) {
  if (dim < 1) throw ShapeError("reset_channel: dimension must be positive");
  KrausSet ks;
  for (int k = 0; k < dim; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(0, k) = 1.0;
    ks.operators.push_back(std::move(m));
  }
  return Channel::from_kraus(std::move(ks));
}

std::vector<double> pauli_probabilities(const Channel& ch) {
  const int n = qubits_of_channel(ch);
  const ComplexMatrix b = pauli_basis(n);
  const ComplexMatrix m = b.adjoint() * ch.choi() * b;
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, i).real();
  return out;
}

bool is_pauli_diagonal(const Channel& ch, double tol) {
  const int n = qubits_of_channel(ch);
  const ComplexMatrix b = pauli_basis(n);
  ComplexMatrix m = b.adjoint() * ch.choi() * b;
  m.diagonal().setZero();
  return max_abs(m) <= tol;
}

}  // namespace channelforge
