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

// Cocycle tables g -> x_g, their constructors, and the checks that certify
// quasi-invariance phi(g(a)) = phi(x_g a) and its strong (hermitian) form.
//
// Every check returns a VerificationReport carrying the raw residual and the
// effective tolerance; pass <=> residual <= tolerance. Tolerances are given
// as an absolute threshold that is scaled by max(1, max_g ||x_g||).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"
#include "quasinv/states.hpp"

namespace quasinv {

struct Witness {
  std::optional<Permutation> g;
  std::optional<Permutation> h;
  std::optional<std::size_t> probe;
};

struct VerificationReport {
  std::string name;
  double residual = 0.0;
  double tolerance = tol::kVerify;
  bool pass = true;
  // Set when the check fails: the worst offending (g, h, probe).
  std::optional<Witness> witness;
  // Auxiliary quantities reported alongside the main residual.
  std::vector<std::pair<std::string, double>> details;

  std::optional<double> detail(const std::string& key) const;
};

VerificationReport make_report(std::string name, double residual, double tolerance,
                               std::optional<Witness> witness = std::nullopt);

class CocycleTable {
 public:
  // entries[i] is x_g for g = group[i]; all entries share one window whose
  // site count matches the group.
  CocycleTable(PermutationGroup group, std::vector<LocalOperator> entries);

  const PermutationGroup& group() const noexcept { return group_; }
  const Window& window() const noexcept { return entries_.front().window(); }
  const std::vector<LocalOperator>& entries() const noexcept { return entries_; }

  // Throws InvalidArgument if g is not in the group.
  const LocalOperator& at(const Permutation& g) const;
  void set(const Permutation& g, LocalOperator x);

  // max(1, max_g ||x_g||).
  double scale() const;

 private:
  PermutationGroup group_;
  std::vector<LocalOperator> entries_;
};

// ||x_e - 1||.
VerificationReport verify_normalization(const CocycleTable& t,
                                        double tolerance = tol::kVerify);

// max over (g2, g1) of ||x_{g2 g1} - x_{g1} g1^{-1}(x_{g2})||.
VerificationReport verify_cocycle_law(const CocycleTable& t,
                                      double tolerance = tol::kVerify);

// max_g ||x_g g^{-1}(x_{g^{-1}}) - 1||.
VerificationReport verify_inverse_relation(const CocycleTable& t,
                                           double tolerance = tol::kVerify);

// max over g, probes a of |phi(g(a)) - phi(x_g a)|. Details carry
// max_g |phi(x_g) - 1| ("normalization") and the smallest real part of
// phi(x_g a* a) ("min_positive_value"); both enter the verdict.
VerificationReport verify_quasi_invariance(const WeightedTraceState& phi,
                                           const CocycleTable& t,
                                           const std::vector<LocalOperator>& probes,
                                           double tolerance = tol::kVerify);

struct StrongReport {
  VerificationReport hermiticity;
  VerificationReport positivity;
  VerificationReport commutativity;
  VerificationReport centralizer;
  // Bounds [S1, S2] on the joint spectrum of the (hermitian parts of) x_g.
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;

  bool pass() const {
    return hermiticity.pass && positivity.pass && commutativity.pass && centralizer.pass;
  }
};

StrongReport verify_strong(const CocycleTable& t, const WeightedTraceState& phi,
                           const std::vector<LocalOperator>& probes,
                           double tolerance = tol::kVerify);

// max over g, a of |phi(g(x) a) - phi(a g(x_g x x_g^{-1}))|. Throws
// NotInCentralizer if x fails centralizer_residual at the tolerance.
VerificationReport verify_centralizer_transport(const WeightedTraceState& phi,
                                                const CocycleTable& t,
                                                const LocalOperator& x,
                                                const std::vector<LocalOperator>& probes,
                                                double tolerance = tol::kVerify);

// x_g = kappa g^{-1}(kappa^{-1}).
CocycleTable trivial_cocycle(const LocalOperator& kappa, const PermutationGroup& group);

// x_g = (prod_{n in supp g} j_n(W_n^{-1})) g^{-1}(prod_{n in supp g} j_n(W_n)).
CocycleTable product_state_cocycle(const ProductState& phi, const PermutationGroup& group);

// x_g = x_L^{-1} g^{-1}(x_L) with x_L = prod_{n in supp g} j_n(W_inf^{-1} W_n).
CocycleTable reference_cocycle(const ProductState& phi, const DensityMatrix& w_inf,
                               const PermutationGroup& group);

// The unique cocycle of a faithful weighted trace state: W^{-1} g^{-1}(W).
CocycleTable cocycle_from_state(const WeightedTraceState& phi,
                                const PermutationGroup& group);

// Invertible solutions of W x = x* W: x = W^{-1} z with z hermitian.
CMatrix solve_sw(const DensityMatrix& w, const CMatrix& z);

struct SwCheck {
  bool in_set = false;
  double residual = 0.0;  // ||W x - x* W||
  CMatrix z;              // W x
  bool z_hermitian = false;
  bool x_hermitian = false;
};

SwCheck check_sw(const DensityMatrix& w, const CMatrix& x,
                 double tolerance = tol::kPos);

// Cocycle on {e, g0, ..., g0^n_max} generated by x_{g0}:
// x_{g0^n} = x_{g0} g0^{-1}(x_{g0}) ... g0^{-(n-1)}(x_{g0}). Throws
// OrderExceeded if n_max exceeds the order of g0. The identity always maps
// to 1; when n_max reaches the order, use cyclic_closure_residual to see
// whether the product wraps back to 1.
CocycleTable propagate_single_generator(const LocalOperator& x0, const Permutation& g0,
                                        int n_max);

// || x_{g0} g0^{-1}(x_{g0}) ... g0^{-(m-1)}(x_{g0}) - 1 || with m = order(g0).
double cyclic_closure_residual(const LocalOperator& x0, const Permutation& g0);

struct LocalTrivialityReport {
  int sites = 0;  // the subgroup acts on [1, sites]
  LocalOperator kappa;
  VerificationReport report;
};

// For each N: kappa_N = average of x_g over table elements supported in
// [1, N], and the residual max_g ||x_g - kappa_N g^{-1}(kappa_N^{-1})||.
std::vector<LocalTrivialityReport> locally_trivial_check(const CocycleTable& t,
                                                         const std::vector<int>& window_sizes,
                                                         double tolerance = tol::kVerify);

// max over g, s of ||x_g^{-s} - g^{-1}(x_{g^{-1}}^s)||. Throws
// NotPositiveEntry when an entry is not positive definite.
VerificationReport power_relation_check(const CocycleTable& t, const std::vector<double>& s,
                                        double tolerance = tol::kVerify);

}  // namespace quasinv
