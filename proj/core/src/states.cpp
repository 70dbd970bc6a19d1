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

#include "quasinv/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quasinv {

namespace {

Window product_window(const std::vector<DensityMatrix>& weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::InvalidArgument, "product state needs at least one site");
  }
  const Eigen::Index d = weights.front().dim();
  for (const DensityMatrix& w : weights) {
    if (w.dim() != d) {
      throw Error(ErrorCode::SizeMismatch, "site weights have different dimensions");
    }
  }
  return Window(static_cast<int>(d), static_cast<int>(weights.size()));
}

CMatrix product_density(const std::vector<DensityMatrix>& weights) {
  product_window(weights);
  CMatrix rho = weights.front().matrix();
  for (std::size_t n = 1; n < weights.size(); ++n) rho = kron(rho, weights[n].matrix());
  return rho;
}

}  // namespace

WeightedTraceState::WeightedTraceState(Window window, const CMatrix& density)
    : window_(window) {
  if (density.rows() != window_.dim() || density.cols() != window_.dim()) {
    throw Error(ErrorCode::SizeMismatch, "density does not match the window");
  }
  if (!is_hermitian(density)) {
    throw Error(ErrorCode::NotAState, "density is not hermitian");
  }
  density_ = 0.5 * (density + density.adjoint());
  const double trace = density_.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotAState, "density trace is " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(density_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol::kPos) {
    throw Error(ErrorCode::NotAState, "density has negative eigenvalue " +
                                          std::to_string(es.eigenvalues()(0)));
  }
}

Complex WeightedTraceState::evaluate(const LocalOperator& a) const {
  if (!(a.window() == window_)) {
    throw Error(ErrorCode::SizeMismatch, "operator and state live on different windows");
  }
  return density_.transpose().cwiseProduct(a.matrix()).sum();
}

ProductState::ProductState(std::vector<DensityMatrix> weights)
    : WeightedTraceState(product_window(weights), product_density(weights)),
      weights_(std::move(weights)) {}

ProductState ProductState::homogeneous(const DensityMatrix& w, int sites) {
  if (sites < 1) throw Error(ErrorCode::InvalidArgument, "sites must be >= 1");
  return ProductState(std::vector<DensityMatrix>(static_cast<std::size_t>(sites), w));
}

bool ProductState::is_homogeneous() const {
  for (const DensityMatrix& w : weights_) {
    if (w.matrix() != weights_.front().matrix()) return false;
  }
  return true;
}

Complex evaluate(const WeightedTraceState& phi, const LocalOperator& a) {
  return phi.evaluate(a);
}

FaithfulnessReport is_faithful(const WeightedTraceState& phi) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(phi.density(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return {lo > tol::kPos, lo};
}

double centralizer_residual(const WeightedTraceState& phi, const LocalOperator& c,
                            const std::vector<LocalOperator>& probes) {
  double worst = 0.0;
  for (const LocalOperator& a : probes) {
    worst = std::max(worst, std::abs(phi.evaluate(a * c) - phi.evaluate(c * a)));
  }
  return worst;
}

CMatrix slice_expectation(const DensityMatrix& w, const CMatrix& two_site) {
  const Eigen::Index d = w.dim();
  if (two_site.rows() != d * d || two_site.cols() != d * d) {
    throw Error(ErrorCode::SizeMismatch, "two-site operator must be d^2 x d^2");
  }
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      Complex acc = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index l = 0; l < d; ++l) {
          acc += two_site(i * d + j, k * d + l) * w.matrix()(l, j);
        }
      }
      out(i, k) = acc;
    }
  }
  return out;
}

LocalOperator slice_expectation(const ProductState& psi, const CMatrix& two_site) {
  if (!psi.is_homogeneous()) {
    throw Error(ErrorCode::NotHomogeneous, "slice expectation needs equal site weights");
  }
  const DensityMatrix& w = psi.weights().front();
  return {Window(static_cast<int>(w.dim()), 1), slice_expectation(w, two_site)};
}

double is_exchangeable(const WeightedTraceState& psi,
                       const std::vector<Permutation>& group,
                       const std::vector<LocalOperator>& probes) {
  double worst = 0.0;
  for (const Permutation& g : group) {
    for (const LocalOperator& a : probes) {
      worst = std::max(worst, std::abs(psi.evaluate(act(g, a)) - psi.evaluate(a)));
    }
  }
  return worst;
}

std::vector<LocalOperator> matrix_unit_probes(const Window& window) {
  const Eigen::Index dim = window.dim();
  std::vector<LocalOperator> probes;
  probes.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      CMatrix e = CMatrix::Zero(dim, dim);
      e(i, j) = 1.0;
      probes.emplace_back(window, std::move(e));
    }
  }
  return probes;
}

std::vector<LocalOperator> random_hermitian_probes(const Window& window,
                                                   std::size_t count,
                                                   std::uint64_t seed) {
  std::vector<LocalOperator> probes;
  probes.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    CMatrix h = random_hermitian(window.dim(), seed * 1000003ULL + k);
    h /= operator_norm(h);
    probes.emplace_back(window, std::move(h));
  }
  return probes;
}

std::vector<LocalOperator> default_probes(const Window& window, std::uint64_t seed) {
  if (window.sites() <= 3 && window.dim() <= 32) return matrix_unit_probes(window);
  return random_hermitian_probes(window, 200, seed);
}

}  // namespace quasinv
