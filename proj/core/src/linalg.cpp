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

#include "channelforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "channelforge/errors.hpp"

namespace channelforge {

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || !is_hermitian(m, 1e-10)) {
    throw ShapeError("hermitian_sqrt: input is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& v = es.eigenvectors();
  return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int hermitian_rank(const ComplexMatrix& m, double cutoff) {
  RealVector ev = hermitian_eigenvalues(m);
  return static_cast<int>((ev.array() > cutoff).count());
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  ComplexVector v(rho.size());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  }
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw ShapeError("unvectorize: vector length does not match rows*cols");
  }
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

ComplexMatrix reshuffle(const ComplexMatrix& m, int dim_out, int dim_in) {
  const Eigen::Index so = static_cast<Eigen::Index>(dim_out) * dim_out;
  const Eigen::Index si = static_cast<Eigen::Index>(dim_in) * dim_in;
  if (m.rows() != so || m.cols() != si) {
    throw ShapeError("reshuffle: expected a " + std::to_string(so) + "x" +
                     std::to_string(si) + " superoperator");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dim_out) * dim_in;
  ComplexMatrix r(n, n);
  for (int b = 0; b < dim_out; ++b)
    for (int bp = 0; bp < dim_out; ++bp)
      for (int a = 0; a < dim_in; ++a)
        for (int ap = 0; ap < dim_in; ++ap)
          r(b * dim_in + a, bp * dim_in + ap) = m(b * dim_out + bp, a * dim_in + ap);
  return r;
}

ComplexMatrix unreshuffle(const ComplexMatrix& m, int dim_out, int dim_in) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim_out) * dim_in;
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError("unreshuffle: expected a " + std::to_string(n) + "x" +
                     std::to_string(n) + " Choi matrix");
  }
  ComplexMatrix s(static_cast<Eigen::Index>(dim_out) * dim_out,
                  static_cast<Eigen::Index>(dim_in) * dim_in);
  for (int b = 0; b < dim_out; ++b)
    for (int bp = 0; bp < dim_out; ++bp)
      for (int a = 0; a < dim_in; ++a)
        for (int ap = 0; ap < dim_in; ++ap)
          s(b * dim_out + bp, a * dim_in + ap) = m(b * dim_in + a, bp * dim_in + ap);
  return s;
}

int integer_root(std::int64_t n, int degree) {
  if (n < 0 || degree < 1) return -1;
  const auto guess = static_cast<std::int64_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / degree)));
  for (std::int64_t c = std::max<std::int64_t>(0, guess - 1); c <= guess + 1; ++c) {
    std::int64_t p = 1;
    for (int k = 0; k < degree; ++k) p *= c;
    if (p == n) return static_cast<int>(c);
  }
  return -1;
}

ComplexMatrix superop_choi_reshuffle(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("superop_choi_reshuffle: matrix must be square");
  }
  const int d = integer_root(m.rows(), 2);
  if (d <= 0) {
    throw ShapeError("superop_choi_reshuffle: dimension " + std::to_string(m.rows()) +
                     " is not of the form d*d");
  }
  return reshuffle(m, d, d);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  const int nf = static_cast<int>(dims.size());
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total) {
    throw ShapeError("partial_trace: matrix size does not match factor dimensions");
  }
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw ShapeError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  Eigen::Index dk = 1;
  Eigen::Index dt = 1;
  for (int f = 0; f < nf; ++f) (kept[f] ? dk : dt) *= dims[f];

  // full index for every (traced, kept) pair
  std::vector<Eigen::Index> index(static_cast<std::size_t>(total));
  std::vector<int> digits(nf, 0);
  for (Eigen::Index full = 0; full < total; ++full) {
    Eigen::Index rem = full;
    for (int f = nf - 1; f >= 0; --f) {
      digits[f] = static_cast<int>(rem % dims[f]);
      rem /= dims[f];
    }
    Eigen::Index ki = 0;
    Eigen::Index ti = 0;
    for (int f = 0; f < nf; ++f) {
      if (kept[f]) ki = ki * dims[f] + digits[f];
      else ti = ti * dims[f] + digits[f];
    }
    index[static_cast<std::size_t>(ti * dk + ki)] = full;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index t = 0; t < dt; ++t) {
    const Eigen::Index* idx = index.data() + t * dk;
    for (Eigen::Index a = 0; a < dk; ++a)
      for (Eigen::Index b = 0; b < dk; ++b) out(a, b) += m(idx[a], idx[b]);
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> new_order) {
  const int nf = static_cast<int>(dims.size());
  bool trivial = true;
  for (int i = 0; i < nf; ++i) trivial = trivial && new_order[i] == i;
  if (trivial) return m;

  std::vector<Eigen::Index> old_stride(nf), new_stride(nf);
  Eigen::Index s = 1;
  for (int f = nf - 1; f >= 0; --f) {
    old_stride[f] = s;
    s *= dims[f];
  }
  s = 1;
  for (int i = nf - 1; i >= 0; --i) {
    new_stride[new_order[i]] = s;
    s *= dims[new_order[i]];
  }
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(n));
  for (Eigen::Index idx = 0; idx < n; ++idx) {
    Eigen::Index target = 0;
    for (int f = 0; f < nf; ++f) target += ((idx / old_stride[f]) % dims[f]) * new_stride[f];
    map[static_cast<std::size_t>(idx)] = target;
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(map[i], map[j]) = m(i, j);
  return out;
}

// (K (x) 1_R) X with the target factor last (fastest-varying).
namespace {

ComplexMatrix left_apply(const ComplexMatrix& k, const ComplexMatrix& x, Eigen::Index rest) {
  const Eigen::Index cols = x.cols();
  Eigen::Map<const ComplexMatrix> xv(x.data(), k.cols(), rest * cols);
  ComplexMatrix y = k * xv;
  return Eigen::Map<ComplexMatrix>(y.data(), k.rows() * rest, cols);
}

}  // namespace

ComplexMatrix apply_on_subsystems(const ComplexMatrix& rho, std::span<const int> dims,
                                  std::span<const int> targets,
                                  std::span<const ComplexMatrix> kraus,
                                  std::vector<int>* out_dims) {
  if (kraus.empty()) throw ShapeError("apply_on_subsystems: empty operator list");
  const int nf = static_cast<int>(dims.size());
  Eigen::Index d_in = 1;
  for (int t : targets) {
    if (t < 0 || t >= nf) throw ShapeError("apply_on_subsystems: target out of range");
    d_in *= dims[t];
  }
  const Eigen::Index d_out = kraus.front().rows();
  for (const auto& k : kraus) {
    if (k.cols() != d_in || k.rows() != d_out) throw ShapeError("apply_on_subsystems: operator shape");
  }
  if (d_out != d_in && targets.size() != 1) {
    throw ShapeError("apply_on_subsystems: dimension change needs a single target");
  }
  std::vector<int> order;
  for (int f = 0; f < nf; ++f)
    if (std::find(targets.begin(), targets.end(), f) == targets.end()) order.push_back(f);
  const std::size_t n_rest = order.size();
  order.insert(order.end(), targets.begin(), targets.end());

  const ComplexMatrix x = permute_subsystems(rho, dims, order);
  Eigen::Index rest = 1;
  for (std::size_t i = 0; i < n_rest; ++i) rest *= dims[order[i]];

  ComplexMatrix acc = ComplexMatrix::Zero(rest * d_out, rest * d_out);
  for (const auto& k : kraus) {
    const ComplexMatrix y = left_apply(k, x, rest);
    const ComplexMatrix yd = y.adjoint();
    acc += left_apply(k, yd, rest).adjoint();
  }

  std::vector<int> permuted_dims;
  for (int f : order) permuted_dims.push_back(dims[f]);
  std::vector<int> new_dims(dims.begin(), dims.end());
  if (d_out != d_in) {
    permuted_dims.back() = static_cast<int>(d_out);
    new_dims[targets.front()] = static_cast<int>(d_out);
  }
  std::vector<int> inverse(nf);
  for (int i = 0; i < nf; ++i) inverse[order[i]] = i;
  if (out_dims) *out_dims = new_dims;
  return permute_subsystems(acc, permuted_dims, inverse);
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& columns, int total) {
  const int given = static_cast<int>(columns.cols());
  if (columns.rows() != total || given > total) {
    throw ShapeError("complete_to_unitary: columns do not fit a unitary of size " +
                     std::to_string(total));
  }
  ComplexMatrix u = ComplexMatrix::Zero(total, total);
  u.leftCols(given) = columns;
  std::vector<bool> used(static_cast<std::size_t>(total), false);
  for (int slot = given; slot < total; ++slot) {
    int best = -1;
    double best_norm = -1.0;
    ComplexVector best_vec;
    for (int j = 0; j < total; ++j) {
      if (used[j]) continue;
      ComplexVector v = ComplexVector::Unit(total, j);
      for (int pass = 0; pass < 2; ++pass) {
        v -= u.leftCols(slot) * (u.leftCols(slot).adjoint() * v);
      }
      const double nrm = v.norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = j;
        best_vec = std::move(v);
      }
    }
    if (best < 0 || best_norm < 1e-12) {
      throw ShapeError("complete_to_unitary: input columns are not orthonormal");
    }
    used[best] = true;
    best_vec /= best_norm;
    best_vec -= u.leftCols(slot) * (u.leftCols(slot).adjoint() * best_vec);
    u.col(slot) = best_vec.normalized();
  }
  return u;
}

namespace {

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n01(rng), n01(rng));
  return g;
}

}  // namespace

ComplexMatrix random_unitary(int dim, std::mt19937_64& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

ComplexMatrix random_density_matrix(int dim, int rank, std::mt19937_64& rng) {
  ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace channelforge
