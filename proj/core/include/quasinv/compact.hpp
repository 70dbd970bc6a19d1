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


// Finite-group averaging E_G(a) = |G|^{-1} sum_g g(a), the conditional
// expectation checks built on it, and the decomposition
// phi(a) = (phi o E_G)(kappa^{-1} a), x_g = kappa g^{-1}(kappa^{-1}).

#pragma once

#include <cstdint>
#include <vector>

#include "quasinv/cocycle.hpp"
#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"
#include "quasinv/states.hpp"

namespace quasinv {

LocalOperator haar_average(const PermutationGroup& group, const LocalOperator& a);

// A basis of Fix(G): the averages E_G(e_ij) of the matrix units, keeping
// those independent of the ones already kept (row-major order).
std::vector<LocalOperator> fixed_point_basis(const PermutationGroup& group,
                                             const Window& window);

// dim Fix(G) = |G|^{-1} sum_g |Tr P_g|^2.
int fixed_point_dimension(const PermutationGroup& group, const Window& window);

struct UmegakiReport {
  VerificationReport idempotence;
  VerificationReport unitality;
  VerificationReport positivity;
  VerificationReport module_property;
  VerificationReport faithfulness;

  bool pass() const {
    return idempotence.pass && unitality.pass && positivity.pass && module_property.pass &&
           faithfulness.pass;
  }
};

// Module property uses the first 16 fixed-point basis elements as b and c.
// Faithfulness: min over 200 seeded unit-norm a of ||E(a* a)|| must exceed
// tolerance.
UmegakiReport verify_umegaki(const PermutationGroup& group, const Window& window,
                             const std::vector<LocalOperator>& probes,
                             double tolerance = 1e-10, std::uint64_t seed = 0x5eed);

// Average of the entries. Throws NotStrongCocycle unless every entry is
// hermitian and positive definite.
LocalOperator kappa(const CocycleTable& t);

// The invariant part phi o E_G, with density E_G(W).
WeightedTraceState invariant_state(const WeightedTraceState& phi, const PermutationGroup& group);

struct StructureReport {
  VerificationReport density;          // |phi(a) - phi_G(kappa^{-1} a)|
  VerificationReport trivialization;   // ||x_g - kappa g^{-1}(kappa^{-1})||
  VerificationReport normalization;    // ||E_G(kappa^{-1}) - 1||
  VerificationReport commutation;      // ||[kappa, g^{-1}(kappa^{-1})]||
  LocalOperator kappa;

  bool pass() const {
    return density.pass && trivialization.pass && normalization.pass && commutation.pass;
  }
};

// Checks a given decomposition (phi_g, kappa) of phi against the table.
StructureReport verify_decomposition(const WeightedTraceState& phi,
                                     const WeightedTraceState& phi_g,
                                     const LocalOperator& kappa_op, const CocycleTable& t,
                                     const std::vector<LocalOperator>& probes,
                                     double tolerance = tol::kVerify);

// verify_decomposition with phi_g = phi o E_G and kappa = kappa(t).
StructureReport verify_structure(const WeightedTraceState& phi, const CocycleTable& t,
                                 const std::vector<LocalOperator>& probes,
                                 double tolerance = tol::kVerify);

struct ConverseResult {
  WeightedTraceState phi;
  CocycleTable table;
};

// phi(a) = phi_g(kappa^{-1} a) and x_g = kappa g^{-1}(kappa^{-1}). Throws
// NotInvariantBase when phi_g is not G-invariant on matrix units,
// SingularKappa for a singular kappa, and NotAState when W_G kappa^{-1} is not
// a density.
ConverseResult converse_construct(const WeightedTraceState& phi_g,
                                  const LocalOperator& kappa_op,
                                  const PermutationGroup& group,
                                  double tolerance = 1e-10);

// max over probes of ||E_large(E_small(a)) - E_large(a)||. Details carry
// the fixed-point dimensions and the range nesting residual
// max ||E_small(E_large(a)) - E_large(a)||. Throws NotNested.
VerificationReport projective_family_check(const PermutationGroup& small,
                                           const PermutationGroup& large,
                                           const std::vector<LocalOperator>& probes,
                                           double tolerance = 1e-10);

// For each subgroup, the cocycle recomputed from phi restricted to that
// subgroup's action against the global table entries.
VerificationReport restriction_consistency(const WeightedTraceState& phi,
                                           const CocycleTable& global,
                                           const std::vector<PermutationGroup>& subgroups,
                                           double tolerance = tol::kVerify);

struct AlternativeDecomposition {
  WeightedTraceState phi_g;
  LocalOperator kappa;
  LocalOperator shift;         // the fixed point k used
  StructureReport report;      // normalization is expected to fail
  double invariance = 0.0;     // G-invariance residual of phi_g
  double normalization = 0.0;  // |phi_g(kappa^{-1}) - 1|

  bool pass(double tolerance = tol::kVerify) const {
    return report.density.pass && report.trivialization.pass && report.commutation.pass &&
           invariance <= tolerance && normalization <= tolerance;
  }
};

// A second pair (phi_g', kappa') = (phi_g(k .) / phi_g(k), kappa k / phi_g(k))
// for a positive fixed point k commuting with W_G; it reproduces phi and
// the cocycle. Throws InvalidArgument when Fix(G) is trivial.
AlternativeDecomposition alternative_decomposition(const WeightedTraceState& phi,
                                                   const CocycleTable& t,
                                                   const std::vector<LocalOperator>& probes,
                                                   double tolerance = tol::kVerify);

}  // namespace quasinv
