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


// Quantum Markov chains built from conditional density amplitudes (CDAs).
// A chain K_1, ..., K_N over a homogeneous product state psi with weight
// W_inf lives on N + 1 sites and defines
//   phi(a) = psi(K_N* ... K_1* a K_1 ... K_N),   a supported in [1, N].

#pragma once

#include <cstdint>
#include <vector>

#include "quasinv/cocycle.hpp"
#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"
#include "quasinv/states.hpp"

namespace quasinv {

// ||Tr_2[K* K (1 (x) W_inf)] - I||.
double cda_normalize_check(const CMatrix& k, const DensityMatrix& w_inf);

class MarkovState {
 public:
  // Throws SingularCDA for a non-invertible K and InvalidArgument when some
  // K fails normalization at `tolerance`.
  MarkovState(DensityMatrix w_inf, std::vector<CMatrix> chain, double tolerance = 1e-9);

  const DensityMatrix& w_inf() const noexcept { return w_inf_; }
  const std::vector<CMatrix>& chain() const noexcept { return chain_; }
  int length() const noexcept { return static_cast<int>(chain_.size()); }
  // N + 1 sites.
  Window window() const;

  ProductState psi() const;
  // The chain's density R W R* on the full window, R the right product.
  WeightedTraceState state() const;

  // The first n CDAs, and the chain with one more CDA appended.
  MarkovState truncated(int n) const;
  MarkovState extended(const CMatrix& k) const;

 private:
  DensityMatrix w_inf_;
  std::vector<CMatrix> chain_;
};

enum class ProductOrder { Right, Left };

// Right: j_{[1,2]}(K_1) ... j_{[N,N+1]}(K_N). Left: the reverse order.
// Throws RangeError unless the window has at least N + 1 sites.
LocalOperator ordered_product(const std::vector<CMatrix>& ks, ProductOrder order,
                              const Window& window);

// phi(a) for a on a window of at most N sites (extended by identities).
// Throws SupportTooLarge otherwise.
Complex markov_eval(const MarkovState& m, const LocalOperator& a);

// |phi_N(a) - phi_{N+1}(a)| when the chain is extended by k.
double window_extension_residual(const MarkovState& m, const CMatrix& k,
                                 const LocalOperator& a);

// y = (prod_n g^{-1}(j_{[n,n+1]}(K_n))) R^{-1} on the chain window, so that
// phi(g(a)) = phi(y* a y). g may act on fewer sites than the window; its
// support must lie in [1, N] (SupportTooLarge). Throws SingularCDA.
LocalOperator y_cocycle(const MarkovState& m, const Permutation& g);

// ||y_N - y_{N'}|| with y_{N'} built from the first N' = max supp(g) CDAs
// (at least one) and extended to the full window.
double y_truncation_residual(const MarkovState& m, const Permutation& g);

// max over probes of |phi(g(a)) - phi(y* a y)|.
double sandwich_residual(const MarkovState& m, const Permutation& g,
                         const std::vector<LocalOperator>& probes);

// Checks the commuting-centralizer hypotheses: NotCommutingChain when two
// embedded CDAs fail to commute, NotInCentralizer when some K* K is not in
// the centralizer of W_inf (x) W_inf.
void check_commuting_chain(const MarkovState& m, double tolerance = 1e-10);

// x_g = (prod_n j_{[n,n+1]}(|K_n|^2))^{-1} g^{-1}(prod_n j_{[n,n+1]}(|K_n|^2)).
LocalOperator x_cocycle_commuting(const MarkovState& m, const Permutation& g,
                                  double tolerance = 1e-10);

// x-cocycle table over a group acting on the chain window.
CocycleTable markov_cocycle_table(const MarkovState& m, const PermutationGroup& group,
                                  double tolerance = 1e-10);

// diag(alpha, beta, beta, alpha) on C^2 (x) C^2 with alpha^2 = 3/2 + delta
// and beta^2 = 1/2 - delta; normalized against W_inf = I/2 for
// |delta| < 1/2.
CMatrix diagonal_cda(double delta);

// N diagonal CDAs with delta_n drawn uniformly from [-0.2, 0.2]; seed 0
// gives delta_n = 0 for every n.
std::vector<CMatrix> default_diagonal_chain(int n, std::uint64_t seed);

}  // namespace quasinv
