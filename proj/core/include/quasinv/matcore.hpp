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

// Dense complex matrix kernel: hermitian spectral decomposition, spectral
// functional calculus, operator norms, positivity classification and seeded
// random density matrices with a guaranteed spectral floor.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "quasinv/error.hpp"

namespace quasinv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
// Hermiticity and positivity are scale-adjusted by the operator norm.
inline constexpr double kHerm = 1e-10;
inline constexpr double kPos = 1e-10;
inline constexpr double kRel = 1e-9;
inline constexpr double kAbs = 1e-12;
// Pass/fail threshold for verification residuals (scaled by entry norms).
inline constexpr double kVerify = 1e-8;
}  // namespace tol

// Largest singular value.
double operator_norm(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tolerance = tol::kHerm);

CMatrix identity(Eigen::Index dim);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Pairwise (balanced tree) sum; the reduction order is fixed so results do
// not depend on how callers batch terms. Throws InvalidArgument when empty.
CMatrix tree_sum(const std::vector<CMatrix>& terms);

// Inverse of a square matrix; throws `code` if the smallest singular value is
// below kPos relative to the largest.
CMatrix checked_inverse(const CMatrix& a, ErrorCode code);

class HermitianMatrix {
 public:
  // Throws NotHermitian when ||A - A*|| > kHerm * ||A|| + kAbs. The stored
  // matrix is symmetrized as (A + A*) / 2.
  explicit HermitianMatrix(const CMatrix& a);

  const CMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  CMatrix m_;
};

// Trace-one positive definite matrix with eigenvalues bounded below by floor().
class DensityMatrix {
 public:
  DensityMatrix(const CMatrix& w, double floor);

  // Uses the smallest eigenvalue as the floor; throws NotPositive if it is not
  // strictly positive.
  static DensityMatrix from_matrix(const CMatrix& w);

  const CMatrix& matrix() const noexcept { return h_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  double floor() const noexcept { return floor_; }
  Eigen::Index dim() const noexcept { return h_.dim(); }

 private:
  HermitianMatrix h_;
  double floor_;
};

struct Spectrum {
  RVector values;   // ascending
  CMatrix vectors;  // columns are orthonormal eigenvectors
};

// Eigenvalues ascending. Within runs of eigenvalues equal up to kAbs * ||H||,
// eigenvectors are ordered by the first differing component magnitude
// (larger first) and every eigenvector has its largest component made real
// and positive.
Spectrum spectral_decompose(const HermitianMatrix& h);

// P^s through the spectral calculus. Requires min eig(P) > kAbs.
HermitianMatrix matrix_power(const HermitianMatrix& p, double s);
CMatrix matrix_power(const CMatrix& p, double s);

struct Classification {
  bool hermitian = false;
  bool positive = false;
  bool invertible = false;
  std::optional<double> min_eig;
  std::optional<double> max_eig;
};

Classification classify(const CMatrix& a);

// Counter-based generator (splitmix64 over a seeded counter) so that every
// draw is a pure function of (seed, index).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);
CMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed);
CMatrix random_unitary(Eigen::Index dim, std::uint64_t seed);

// G G* rescaled to trace 1 - dim * floor, plus floor * I.
DensityMatrix random_density(int dim, double floor, std::uint64_t seed);

}  // namespace quasinv
