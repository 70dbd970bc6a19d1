// Copyright 2026 The quasinv Authors
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

#include "quasinv/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "quasinv/error.hpp"

namespace quasinv {

namespace {

RVector singular_values(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues();
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Quantized component magnitudes used to break ties between eigenvectors of
// (numerically) equal eigenvalues.
std::vector<long long> tie_key(const CMatrix& vectors, Eigen::Index col) {
  std::vector<long long> key(static_cast<std::size_t>(vectors.rows()));
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    key[static_cast<std::size_t>(r)] =
        std::llround(std::abs(vectors(r, col)) * 1e10);
  }
  return key;
}

}  // namespace

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

bool is_hermitian(const CMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  const double scale = operator_norm(a);
  return operator_norm(a - a.adjoint()) <= tolerance * scale + tol::kAbs;
}

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix checked_inverse(const CMatrix& a, ErrorCode code) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::SizeMismatch, "inverse of a non-square matrix");
  }
  const RVector s = singular_values(a);
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double smin = s.size() > 0 ? s(s.size() - 1) : 0.0;
  if (smax == 0.0 || smin <= tol::kPos * smax) {
    throw Error(code, "matrix is singular (smallest singular value " +
                          std::to_string(smin) + ")");
  }
  return a.partialPivLu().inverse();
}

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  }
  if (!is_hermitian(a)) {
    throw Error(ErrorCode::NotHermitian,
                "||A - A*|| = " + std::to_string(operator_norm(a - a.adjoint())));
  }
  m_ = 0.5 * (a + a.adjoint());
}

DensityMatrix::DensityMatrix(const CMatrix& w, double floor)
    : h_(w), floor_(floor) {
  if (!(floor > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "density floor must be positive");
  }
  const double trace = h_.matrix().trace().real();
  if (std::abs(trace - 1.0) > tol::kAbs * static_cast<double>(w.rows()) * 10) {
    throw Error(ErrorCode::NotAState,
                "density trace is " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h_.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < floor - tol::kAbs) {
    throw Error(ErrorCode::NotPositive,
                "density eigenvalue " + std::to_string(es.eigenvalues()(0)) +
                    " below floor " + std::to_string(floor));
  }
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& w) {
  const HermitianMatrix h(w);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::NotPositive,
                "density is not positive definite (min eig " +
                    std::to_string(lo) + ")");
  }
  return DensityMatrix(w, lo);
}

Spectrum spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "eigensolver did not converge");
  }
  RVector values = es.eigenvalues();
  CMatrix vectors = es.eigenvectors();
  const Eigen::Index n = values.size();

  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double m = std::abs(vectors(r, c));
      if (m > best + 1e-12) {
        best = m;
        k = r;
      }
    }
    if (best > 0.0) vectors.col(c) *= std::conj(vectors(k, c)) / best;
  }

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && values(end) - values(start) <= tol::kAbs * scale) ++end;
    if (end - start > 1) {
      std::stable_sort(order.begin() + start, order.begin() + end,
                       [&](Eigen::Index a, Eigen::Index b) {
                         return tie_key(vectors, a) > tie_key(vectors, b);
                       });
    }
    start = end;
  }

  Spectrum out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = values(src);
    out.vectors.col(i) = vectors.col(src);
  }
  return out;
}

HermitianMatrix matrix_power(const HermitianMatrix& p, double s) {
  const Spectrum spec = spectral_decompose(p);
  if (spec.values.size() > 0 && spec.values(0) <= tol::kAbs) {
    throw Error(ErrorCode::NotPositive,
                "matrix_power needs a positive definite argument (min eig " +
                    std::to_string(spec.values(0)) + ")");
  }
  if (s == 0.0) return HermitianMatrix(identity(p.dim()));
  if (s == 1.0) return p;
  const RVector powered =
      spec.values.unaryExpr([s](double v) { return std::pow(v, s); });
  const CMatrix m = spec.vectors * powered.cast<Complex>().asDiagonal() *
                    spec.vectors.adjoint();
  return HermitianMatrix(0.5 * (m + m.adjoint()));
}

CMatrix matrix_power(const CMatrix& p, double s) {
  return matrix_power(HermitianMatrix(p), s).matrix();
}

Classification classify(const CMatrix& a) {
  Classification c;
  if (a.rows() != a.cols() || a.size() == 0) return c;
  const double scale = operator_norm(a);
  c.hermitian = is_hermitian(a);
  if (c.hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()),
                                              Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    c.min_eig = ev(0);
    c.max_eig = ev(ev.size() - 1);
    c.positive = ev(0) >= -tol::kPos * scale;
    c.invertible = ev.cwiseAbs().minCoeff() > tol::kPos * scale;
  } else {
    const RVector s = singular_values(a);
    c.invertible = s(s.size() - 1) > tol::kPos * s(0);
  }
  return c;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return splitmix64(splitmix64(seed_) ^ (counter_ * 0xD1B54A32D192ED03ULL));
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

CMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  const CMatrix g = random_matrix(dim, dim, seed);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  const CMatrix g = random_matrix(dim, dim, seed);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * identity(dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double m = std::abs(r(i, i));
    if (m > 0.0) q.col(i) *= r(i, i) / m;
  }
  return q;
}

DensityMatrix random_density(int dim, double floor, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(floor > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "floor must be positive");
  }
  if (floor * dim >= 1.0) {
    throw Error(ErrorCode::FloorTooLarge,
                "floor " + std::to_string(floor) + " >= 1/" + std::to_string(dim));
  }
  const CMatrix g = random_matrix(dim, dim, seed);
  CMatrix w = g * g.adjoint();
  w *= (1.0 - dim * floor) / w.trace().real();
  w += floor * identity(dim);
  w = 0.5 * (w + w.adjoint());
  return DensityMatrix(w, floor);
}

CMatrix tree_sum(const std::vector<CMatrix>& terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "empty sum");
  std::vector<CMatrix> level = terms;
  while (level.size() > 1) {
    std::vector<CMatrix> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

}  // namespace quasinv
