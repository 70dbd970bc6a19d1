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


#include "quasinv/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quasinv {

namespace {

constexpr Eigen::Index kExplicitDimCap = 256;

void check_range(const WindowProductSequence& seq, int first, int last) {
  if (first < 1 || last < first || last > seq.size()) {
    throw Error(ErrorCode::RangeError,
                "range [" + std::to_string(first) + ", " + std::to_string(last) + "]");
  }
}

// Factors first..last as a Kronecker product on last - first + 1 sites.
CMatrix kron_range(const WindowProductSequence& seq, int first, int last) {
  CMatrix acc = CMatrix::Identity(1, 1);
  for (int k = first; k <= last; ++k) acc = kron(acc, seq.factor(k));
  return acc;
}

RVector factor_eigenvalues(const CMatrix& f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (f + f.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double telescoped(const WindowProductSequence& seq, int m, int n, double head) {
  double sup = 1.0;
  double running = 1.0;
  double sum = 0.0;
  for (int k = m + 1; k <= n; ++k) {
    sup = std::max(sup, running);
    running *= operator_norm(seq.factor(k));
    sum += operator_norm(seq.factor(k) - identity(seq.local_dim()));
  }
  return head * sup * sum;
}

double tail_sum(const WindowProductSequence& seq, int m, int n) {
  double sum = 0.0;
  for (int k = m + 1; k <= n; ++k) {
    sum += operator_norm(seq.factor(k) - identity(seq.local_dim()));
  }
  return sum;
}

WindowProductSequence diagonal_preset(int n, double (*eps)(int)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "preset length must be >= 1");
  const DensityMatrix w_inf(0.5 * identity(2), 0.5);
  std::vector<DensityMatrix> ws;
  ws.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double e = eps(k);
    CMatrix w = CMatrix::Zero(2, 2);
    w(0, 0) = 0.5 + e;
    w(1, 1) = 0.5 - e;
    ws.emplace_back(w, 0.5 - e);
  }
  return WindowProductSequence(w_inf, std::move(ws));
}

}  // namespace

WindowProductSequence::WindowProductSequence(DensityMatrix w_inf,
                                             std::vector<DensityMatrix> weights)
    : w_inf_(std::move(w_inf)), weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidArgument, "sequence needs a weight");
  const CMatrix inv = checked_inverse(w_inf_.matrix(), ErrorCode::SingularWeight);
  for (const DensityMatrix& w : weights_) {
    if (w.dim() != w_inf_.dim()) {
      throw Error(ErrorCode::SizeMismatch, "weights have different dimensions");
    }
    CMatrix f = inv * w.matrix();
    checked_inverse(f, ErrorCode::SingularWeight);
    if (operator_norm(commutator(w_inf_.matrix(), w.matrix())) > tol::kHerm) commuting_ = false;
    factors_.push_back(std::move(f));
  }
}

const CMatrix& WindowProductSequence::factor(int k) const {
  if (k < 1 || k > size()) throw Error(ErrorCode::RangeError, "factor " + std::to_string(k));
  return factors_[static_cast<std::size_t>(k - 1)];
}

LocalOperator x_range(const WindowProductSequence& seq, int first, int last) {
  check_range(seq, first, last);
  const Window window(seq.local_dim(), last);
  CMatrix m = kron(identity(static_cast<Eigen::Index>(std::pow(seq.local_dim(), first - 1))),
                   kron_range(seq, first, last));
  return {window, std::move(m)};
}

LocalOperator x_window(const WindowProductSequence& seq, int n) { return x_range(seq, 1, n); }

double multiplicativity_residual(const WindowProductSequence& seq, int m, int n) {
  check_range(seq, m + 1, n);
  const Window window(seq.local_dim(), n);
  const LocalOperator head = extend(x_window(seq, m), window);
  return operator_norm(x_window(seq, n).matrix() - (head * x_range(seq, m + 1, n)).matrix());
}

double pairing_check(const WindowProductSequence& seq, const LocalOperator& a, int n) {
  const int m = a.window().sites();
  if (m > n) throw Error(ErrorCode::SupportTooLarge, "observable reaches beyond the window");
  check_range(seq, 1, n);
  CMatrix rho = CMatrix::Identity(1, 1);
  for (int k = 1; k <= m; ++k) rho = kron(rho, seq.weights()[static_cast<std::size_t>(k - 1)].matrix());
  const Complex phi = rho.transpose().cwiseProduct(a.matrix()).sum();
  const Window window(seq.local_dim(), n);
  CMatrix psi = CMatrix::Identity(1, 1);
  for (int k = 1; k <= n; ++k) psi = kron(psi, seq.w_inf().matrix());
  const CMatrix xa = x_window(seq, n).matrix() * extend(a, window).matrix();
  return std::abs(phi - psi.transpose().cwiseProduct(xa).sum());
}

double telescoping_check(const std::vector<CMatrix>& factors) {
  if (factors.empty()) return 0.0;
  const Eigen::Index d = factors.front().rows();
  CMatrix prod = identity(d);
  CMatrix rhs = CMatrix::Zero(d, d);
  for (const CMatrix& a : factors) {
    if (a.rows() != d || a.cols() != d) {
      throw Error(ErrorCode::SizeMismatch, "factors must share one square shape");
    }
    rhs += prod * (a - identity(d));
    prod = prod * a;
  }
  return operator_norm(prod - identity(d) - rhs);
}

CauchyDiagnostic cauchy_diagnostic(const WindowProductSequence& seq, int m, int n) {
  check_range(seq, m, n);
  if (m >= n) throw Error(ErrorCode::RangeError, "need M < N");
  double head = 1.0;
  for (int k = 1; k <= m; ++k) head *= operator_norm(seq.factor(k));

  CauchyDiagnostic out;
  out.m = m;
  out.n = n;
  double tail_dev = 0.0;
  if (seq.commuting()) {
    double hi = 1.0;
    double lo = 1.0;
    for (int k = m + 1; k <= n; ++k) {
      const RVector ev = factor_eigenvalues(seq.factor(k));
      hi *= ev(ev.size() - 1);
      lo *= ev(0);
    }
    tail_dev = std::max(hi - 1.0, 1.0 - lo);
  } else {
    const double dim = std::pow(seq.local_dim(), n - m);
    if (dim > 4096) {
      throw Error(ErrorCode::WindowTooLarge, "tail window exceeds 4096 dimensions");
    }
    const CMatrix tail = kron_range(seq, m + 1, n);
    tail_dev = operator_norm(tail - identity(tail.rows()));
    out.explicit_path = true;
  }
  out.diff = head * tail_dev;
  out.bound = head * tail_dev;
  out.telescoped_bound = telescoped(seq, m, n, head);
  out.summable_tail = tail_sum(seq, m, n);
  return out;
}

CauchyDiagnostic cauchy_diagnostic_explicit(const WindowProductSequence& seq, int m, int n) {
  check_range(seq, m, n);
  if (m >= n) throw Error(ErrorCode::RangeError, "need M < N");
  if (std::pow(seq.local_dim(), n) > static_cast<double>(kExplicitDimCap)) {
    throw Error(ErrorCode::WindowTooLarge, "explicit path is capped at 256 dimensions");
  }
  const Window window(seq.local_dim(), n);
  const CMatrix xn = x_window(seq, n).matrix();
  const CMatrix xm = extend(x_window(seq, m), window).matrix();
  const CMatrix head = x_window(seq, m).matrix();
  const CMatrix tail = kron_range(seq, m + 1, n);

  CauchyDiagnostic out;
  out.m = m;
  out.n = n;
  out.diff = operator_norm(xn - xm);
  out.bound = operator_norm(head) * operator_norm(tail - identity(tail.rows()));
  out.telescoped_bound = telescoped(seq, m, n, operator_norm(head));
  out.summable_tail = tail_sum(seq, m, n);
  out.explicit_path = true;
  return out;
}

ConvergenceSeries convergence_series(const WindowProductSequence& seq) {
  ConvergenceSeries out;
  const CMatrix one = identity(seq.local_dim());
  for (int n = 2; n <= seq.size(); ++n) {
    const CauchyDiagnostic c = cauchy_diagnostic(seq, n - 1, n);
    ConvergenceRow row;
    row.n = n;
    row.diff = c.diff;
    row.bound = c.bound;
    row.tail = operator_norm(seq.factor(n) - one);
    row.ratio = row.tail > 0.0 ? row.diff / row.tail : 0.0;
    out.max_ratio = std::max(out.max_ratio, row.ratio);
    out.rows.push_back(row);
  }
  std::vector<double> blocks;
  for (int start = 1; 2 * start - 1 <= seq.size(); start *= 2) {
    blocks.push_back(tail_sum(seq, start - 1, 2 * start - 1));
  }
  if (blocks.size() >= 3) {
    out.non_convergent = blocks.back() >= 0.5 * blocks[blocks.size() - 2];
  }
  return out;
}

WindowProductSequence summable_preset(int n) {
  return diagonal_preset(n, [](int k) { return 0.25 * std::pow(4.0, -k); });
}

WindowProductSequence harmonic_preset(int n) {
  return diagonal_preset(n, [](int k) { return 0.25 / k; });
}

}  // namespace quasinv
