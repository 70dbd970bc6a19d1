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


#include "quasinv/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quasinv {

namespace {

void check_cda_shape(const CMatrix& k, Eigen::Index d) {
  if (k.rows() != d * d || k.cols() != d * d) {
    throw Error(ErrorCode::SizeMismatch, "CDA must be d^2 x d^2");
  }
}

int max_support(const Permutation& g) {
  const std::vector<int> s = support(g);
  return s.empty() ? 0 : s.back();
}

Permutation on_window(const Permutation& g, const Window& window) {
  if (g.size() > window.sites()) {
    throw Error(ErrorCode::SupportTooLarge, "permutation acts beyond the chain window");
  }
  return g.size() == window.sites() ? g : g.extended(window.sites());
}

LocalOperator modulus_product(const MarkovState& m, const Window& window) {
  LocalOperator acc = LocalOperator::identity(window);
  for (int n = 1; n <= m.length(); ++n) {
    const CMatrix& k = m.chain()[static_cast<std::size_t>(n - 1)];
    acc = acc * embed_pair(window, n, k.adjoint() * k);
  }
  return acc;
}

}  // namespace

double cda_normalize_check(const CMatrix& k, const DensityMatrix& w_inf) {
  check_cda_shape(k, w_inf.dim());
  return operator_norm(slice_expectation(w_inf, k.adjoint() * k) - identity(w_inf.dim()));
}

MarkovState::MarkovState(DensityMatrix w_inf, std::vector<CMatrix> chain, double tolerance)
    : w_inf_(std::move(w_inf)), chain_(std::move(chain)) {
  if (chain_.empty()) throw Error(ErrorCode::InvalidArgument, "chain needs at least one CDA");
  for (std::size_t n = 0; n < chain_.size(); ++n) {
    const CMatrix& k = chain_[n];
    check_cda_shape(k, w_inf_.dim());
    if (!classify(k).invertible) {
      throw Error(ErrorCode::SingularCDA, "CDA " + std::to_string(n + 1) + " is singular");
    }
    const double r = cda_normalize_check(k, w_inf_);
    if (r > tolerance) {
      throw Error(ErrorCode::InvalidArgument, "CDA " + std::to_string(n + 1) +
                                                  " is not normalized: " + std::to_string(r));
    }
  }
}

Window MarkovState::window() const {
  return Window(static_cast<int>(w_inf_.dim()), length() + 1);
}

ProductState MarkovState::psi() const { return ProductState::homogeneous(w_inf_, length() + 1); }

WeightedTraceState MarkovState::state() const {
  const Window w = window();
  const LocalOperator r = ordered_product(chain_, ProductOrder::Right, w);
  const CMatrix rho = r.matrix() * psi().density() * r.matrix().adjoint();
  return WeightedTraceState(w, rho);
}

MarkovState MarkovState::truncated(int n) const {
  if (n < 1 || n > length()) throw Error(ErrorCode::RangeError, "truncation length " + std::to_string(n));
  return MarkovState(w_inf_, std::vector<CMatrix>(chain_.begin(), chain_.begin() + n));
}

MarkovState MarkovState::extended(const CMatrix& k) const {
  std::vector<CMatrix> next = chain_;
  next.push_back(k);
  return MarkovState(w_inf_, std::move(next));
}

LocalOperator ordered_product(const std::vector<CMatrix>& ks, ProductOrder order,
                              const Window& window) {
  const int n = static_cast<int>(ks.size());
  if (window.sites() < n + 1) {
    throw Error(ErrorCode::RangeError, "window too small for " + std::to_string(n) + " CDAs");
  }
  LocalOperator acc = LocalOperator::identity(window);
  for (int i = 0; i < n; ++i) {
    const int site = order == ProductOrder::Right ? i + 1 : n - i;
    acc = acc * embed_pair(window, site, ks[static_cast<std::size_t>(site - 1)]);
  }
  return acc;
}

Complex markov_eval(const MarkovState& m, const LocalOperator& a) {
  if (a.window().sites() > m.length()) {
    throw Error(ErrorCode::SupportTooLarge, "observable reaches beyond the chain");
  }
  const Window w = m.window();
  const LocalOperator r = ordered_product(m.chain(), ProductOrder::Right, w);
  return m.psi().evaluate(r.adjoint() * extend(a, w) * r);
}

double window_extension_residual(const MarkovState& m, const CMatrix& k,
                                 const LocalOperator& a) {
  return std::abs(markov_eval(m, a) - markov_eval(m.extended(k), a));
}

LocalOperator y_cocycle(const MarkovState& m, const Permutation& g) {
  const Window w = m.window();
  const Permutation gw = on_window(g, w);
  if (max_support(gw) > m.length()) {
    throw Error(ErrorCode::SupportTooLarge, "permutation support reaches beyond the chain");
  }
  LocalOperator moved = LocalOperator::identity(w);
  for (int n = 1; n <= m.length(); ++n) {
    moved = moved *
            act_inverse(gw, embed_pair(w, n, m.chain()[static_cast<std::size_t>(n - 1)]));
  }
  const LocalOperator r = ordered_product(m.chain(), ProductOrder::Right, w);
  return {w, moved.matrix() * checked_inverse(r.matrix(), ErrorCode::SingularCDA)};
}

double y_truncation_residual(const MarkovState& m, const Permutation& g) {
  const Permutation gw = on_window(g, m.window());
  const int n_short = std::max(1, max_support(gw));
  const MarkovState short_chain = m.truncated(n_short);
  const Permutation gs = Permutation(std::vector<int>(
      gw.image().begin(), gw.image().begin() + short_chain.window().sites()));
  const LocalOperator y_short = y_cocycle(short_chain, gs);
  return operator_norm(y_cocycle(m, gw).matrix() - extend(y_short, m.window()).matrix());
}

double sandwich_residual(const MarkovState& m, const Permutation& g,
                         const std::vector<LocalOperator>& probes) {
  const WeightedTraceState phi = m.state();
  const Permutation gw = on_window(g, m.window());
  const LocalOperator y = y_cocycle(m, gw);
  const LocalOperator y_adj = y.adjoint();
  double worst = 0.0;
  for (const LocalOperator& a : probes) {
    worst = std::max(worst, std::abs(phi.evaluate(act(gw, a)) - phi.evaluate(y_adj * a * y)));
  }
  return worst;
}

void check_commuting_chain(const MarkovState& m, double tolerance) {
  const Window w = m.window();
  std::vector<LocalOperator> gens;
  for (int n = 1; n <= m.length(); ++n) {
    const CMatrix& k = m.chain()[static_cast<std::size_t>(n - 1)];
    gens.push_back(embed_pair(w, n, k));
    gens.push_back(embed_pair(w, n, k.adjoint()));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double c = operator_norm(commutator(gens[i].matrix(), gens[j].matrix()));
      if (c > tolerance * std::max(1.0, operator_norm(gens[i].matrix()) *
                                            operator_norm(gens[j].matrix()))) {
        throw Error(ErrorCode::NotCommutingChain,
                    "embedded CDAs fail to commute: " + std::to_string(c));
      }
    }
  }
  const Window pair(static_cast<int>(m.w_inf().dim()), 2);
  const ProductState psi2 = ProductState::homogeneous(m.w_inf(), 2);
  const std::vector<LocalOperator> probes = matrix_unit_probes(pair);
  for (const CMatrix& k : m.chain()) {
    const double r = centralizer_residual(psi2, LocalOperator(pair, k), probes);
    if (r > tolerance * std::max(1.0, operator_norm(k))) {
      throw Error(ErrorCode::NotInCentralizer,
                  "CDA is not in the centralizer of psi: " + std::to_string(r));
    }
  }
}

LocalOperator x_cocycle_commuting(const MarkovState& m, const Permutation& g,
                                  double tolerance) {
  check_commuting_chain(m, tolerance);
  const Window w = m.window();
  const Permutation gw = on_window(g, w);
  const LocalOperator p = modulus_product(m, w);
  const LocalOperator p_inv{w, checked_inverse(p.matrix(), ErrorCode::SingularCDA)};
  return p_inv * act_inverse(gw, p);
}

CocycleTable markov_cocycle_table(const MarkovState& m, const PermutationGroup& group,
                                  double tolerance) {
  check_commuting_chain(m, tolerance);
  const Window w = m.window();
  const LocalOperator p = modulus_product(m, w);
  const LocalOperator p_inv{w, checked_inverse(p.matrix(), ErrorCode::SingularCDA)};
  std::vector<LocalOperator> entries;
  entries.reserve(group.size());
  for (const Permutation& g : group.elements()) {
    entries.push_back(p_inv * act_inverse(on_window(g, w), p));
  }
  std::vector<Permutation> elems;
  for (const Permutation& g : group.elements()) elems.push_back(on_window(g, w));
  return CocycleTable(PermutationGroup(std::move(elems)), std::move(entries));
}

CMatrix diagonal_cda(double delta) {
  if (!(std::abs(delta) < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (-1/2, 1/2)");
  }
  const double alpha = std::sqrt(1.5 + delta);
  const double beta = std::sqrt(0.5 - delta);
  CMatrix k = CMatrix::Zero(4, 4);
  k(0, 0) = alpha;
  k(1, 1) = beta;
  k(2, 2) = beta;
  k(3, 3) = alpha;
  return k;
}

std::vector<CMatrix> default_diagonal_chain(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "chain length must be >= 1");
  Rng rng(seed);
  std::vector<CMatrix> chain;
  chain.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double delta = seed == 0 ? 0.0 : 0.4 * (rng.uniform() - 0.5);
    chain.push_back(diagonal_cda(delta));
  }
  return chain;
}

}  // namespace quasinv
