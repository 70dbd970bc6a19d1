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

#pragma once

#include <cstdint>
#include <vector>

#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"

namespace quasinv {

// phi(a) = Tr(W a) on a window. W is hermitian, positive semidefinite and has
// unit trace; faithfulness (W > 0) is a separate query.
class WeightedTraceState {
 public:
  WeightedTraceState(Window window, const CMatrix& density);

  const Window& window() const noexcept { return window_; }
  const CMatrix& density() const noexcept { return density_; }

  Complex evaluate(const LocalOperator& a) const;

 private:
  Window window_;
  CMatrix density_;
};

// (x)_n Tr(W_n .) on the window of N = weights.size() sites.
class ProductState : public WeightedTraceState {
 public:
  explicit ProductState(std::vector<DensityMatrix> weights);

  static ProductState homogeneous(const DensityMatrix& w, int sites);

  const std::vector<DensityMatrix>& weights() const noexcept { return weights_; }
  bool is_homogeneous() const;

 private:
  std::vector<DensityMatrix> weights_;
};

Complex evaluate(const WeightedTraceState& phi, const LocalOperator& a);

struct FaithfulnessReport {
  bool faithful = false;
  double min_eigenvalue = 0.0;
};

FaithfulnessReport is_faithful(const WeightedTraceState& phi);

// max over probes a of |phi(a c) - phi(c a)|.
double centralizer_residual(const WeightedTraceState& phi, const LocalOperator& c,
                            const std::vector<LocalOperator>& probes);

// Right slice Tr_2[X (1 (x) W)] of a two-site operator X (d^2 x d^2).
CMatrix slice_expectation(const DensityMatrix& w, const CMatrix& two_site);

// (id (x) psi_0)(X) for X on sites {site, site + 1} of psi's window, returned
// as an operator on the single-site window. Throws NotHomogeneous unless all
// weights of psi coincide.
LocalOperator slice_expectation(const ProductState& psi, const CMatrix& two_site);

// max over g, probes a of |psi(g(a)) - psi(a)|.
double is_exchangeable(const WeightedTraceState& psi,
                       const std::vector<Permutation>& group,
                       const std::vector<LocalOperator>& probes);

// Matrix units e_ij of the window, ordered row-major by (i, j).
std::vector<LocalOperator> matrix_unit_probes(const Window& window);
std::vector<LocalOperator> random_hermitian_probes(const Window& window,
                                                   std::size_t count,
                                                   std::uint64_t seed);
// Matrix units for windows of at most three sites (and dimension <= 32),
// otherwise 200 seeded random hermitian probes.
std::vector<LocalOperator> default_probes(const Window& window,
                                          std::uint64_t seed = 0x5eed);

}  // namespace quasinv
