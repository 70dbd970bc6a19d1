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


// Finite-window products x_[M,N] = prod_{k=M}^{N} j_k(W_inf^{-1} W_k) and the
// diagnostics for their norm convergence as N grows.

#pragma once

#include <vector>

#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"

namespace quasinv {

class WindowProductSequence {
 public:
  // Throws SizeMismatch on mixed dimensions and SingularWeight when some
  // factor W_inf^{-1} W_k is singular.
  WindowProductSequence(DensityMatrix w_inf, std::vector<DensityMatrix> weights);

  const DensityMatrix& w_inf() const noexcept { return w_inf_; }
  const std::vector<DensityMatrix>& weights() const noexcept { return weights_; }
  int size() const noexcept { return static_cast<int>(weights_.size()); }
  int local_dim() const noexcept { return static_cast<int>(w_inf_.dim()); }

  // W_inf^{-1} W_k, k 1-based.
  const CMatrix& factor(int k) const;
  // True when every factor is hermitian (W_inf commutes with each W_k);
  // norms then follow from single-site spectra.
  bool commuting() const noexcept { return commuting_; }

 private:
  DensityMatrix w_inf_;
  std::vector<DensityMatrix> weights_;
  std::vector<CMatrix> factors_;
  bool commuting_ = true;
};

// x_[M,N] embedded on the window [1, N]. Throws RangeError for an empty or
// unavailable range.
LocalOperator x_range(const WindowProductSequence& seq, int first, int last);
LocalOperator x_window(const WindowProductSequence& seq, int n);

// ||x_[1,N] - x_[1,M] x_[M+1,N]||.
double multiplicativity_residual(const WindowProductSequence& seq, int m, int n);

// |phi(a) - psi(x_[1,N] a)| with phi = (x)_k Tr(W_k .), psi the W_inf
// product state, a on a window of M <= N sites (else SupportTooLarge).
double pairing_check(const WindowProductSequence& seq, const LocalOperator& a, int n);

// ||prod a_h - 1 - sum_h (prod_{j<h} a_j)(a_h - 1)||.
double telescoping_check(const std::vector<CMatrix>& factors);

struct CauchyDiagnostic {
  int m = 0;
  int n = 0;
  double diff = 0.0;               // ||x_[1,N] - x_[1,M]||
  double bound = 0.0;              // ||x_[1,M]|| ||x_[M+1,N] - 1||
  double telescoped_bound = 0.0;   // prod_{k<=M} ||F_k|| sup_h prod ||F_j|| sum ||F_k - 1||
  double summable_tail = 0.0;      // sum_{k=M+1}^{N} ||F_k - 1||
  bool explicit_path = false;
};

// Uses cross-norm identities (spectral when commuting(), explicit matrices
// on [M+1, N] otherwise). Throws RangeError unless 1 <= M < N <= size().
CauchyDiagnostic cauchy_diagnostic(const WindowProductSequence& seq, int m, int n);

// Same quantities from explicit d^N matrices; WindowTooLarge beyond d^N = 256.
CauchyDiagnostic cauchy_diagnostic_explicit(const WindowProductSequence& seq, int m, int n);

struct ConvergenceRow {
  int n = 0;
  double diff = 0.0;    // ||x_[1,N] - x_[1,N-1]||
  double bound = 0.0;
  double tail = 0.0;    // ||F_N - 1||
  double ratio = 0.0;   // diff / tail, the empirical constant C_N
};

struct ConvergenceSeries {
  std::vector<ConvergenceRow> rows;
  double max_ratio = 0.0;
  // Set when dyadic block sums of ||F_k - 1|| stop shrinking: the last
  // complete block is at least half of the previous one.
  bool non_convergent = false;
};

ConvergenceSeries convergence_series(const WindowProductSequence& seq);

// W_inf = I/2, W_k = diag(1/2 + e_k, 1/2 - e_k): e_k = 4^{-k}/4 (summable)
// or e_k = 1/(4k) (harmonic).
WindowProductSequence summable_preset(int n);
WindowProductSequence harmonic_preset(int n);

}  // namespace quasinv
