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


// Concrete GNS triple of a faithful state on a window. The space is
// C^{D x D} with vectors stored as column-major vec(a); <a, b> = phi(a* b)
// is carried by the gram matrix G = W^T (x) I and pi(a) = I (x) a.
// Adjoints are taken relative to G: A^dagger = G^{-1} A^H G.

#pragma once

#include <vector>

#include "quasinv/cocycle.hpp"
#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"
#include "quasinv/states.hpp"

namespace quasinv {

class GnsRepresentation {
 public:
  // Throws NotFaithful unless the density is positive definite.
  explicit GnsRepresentation(const WeightedTraceState& phi);

  const Window& window() const noexcept { return phi_.window(); }
  const WeightedTraceState& state() const noexcept { return phi_; }
  Eigen::Index dim() const noexcept { return gram_.rows(); }
  const CMatrix& gram() const noexcept { return gram_; }
  const CVector& cyclic_vector() const noexcept { return cyclic_; }

  CVector vector_of(const LocalOperator& a) const;
  CMatrix pi(const LocalOperator& a) const;
  Complex inner(const CVector& u, const CVector& v) const;
  CMatrix adjoint(const CMatrix& op) const;

  // L^H A L^{-H} with G = L L^H: the matrix of A in an orthonormal basis.
  CMatrix orthonormalized(const CMatrix& op) const;

 private:
  WeightedTraceState phi_;
  CMatrix gram_;
  CMatrix gram_inv_;
  CMatrix chol_lower_;
  CVector cyclic_;
};

GnsRepresentation build_gns(const WeightedTraceState& phi);

struct GnsReport {
  VerificationReport state_reproduction;  // |<Phi, pi(a) Phi> - phi(a)|
  VerificationReport homomorphism;        // ||pi(ab) - pi(a) pi(b)||
  VerificationReport adjointness;         // ||pi(a*) - pi(a)^dagger||
  VerificationReport unit;                // ||pi(1) - 1||
  VerificationReport gram_positivity;     // smallest gram eigenvalue
  VerificationReport cyclicity;           // D^2 - rank{pi(a) Phi}

  bool pass() const {
    return state_reproduction.pass && homomorphism.pass && adjointness.pass && unit.pass &&
           gram_positivity.pass && cyclicity.pass;
  }
};

GnsReport verify_gns(const GnsRepresentation& r, const std::vector<LocalOperator>& probes,
                     double tolerance = 1e-10);

struct GnsUnitaries {
  PermutationGroup group;
  std::vector<CMatrix> matrices;  // matrices[i] is U_g for g = group[i]

  const CMatrix& at(const Permutation& g) const;
};

// U_g vec(a) = vec(g(a) x_{g^{-1}}^{1/2}). Throws NotStrongCocycle unless
// every x_g is hermitian with smallest eigenvalue above 1e-12.
GnsUnitaries build_unitaries(const GnsRepresentation& r, const CocycleTable& t);

struct UnitaryReport {
  VerificationReport unitarity;  // ||U^dagger U - 1||
  VerificationReport group_law;  // ||U_g U_h - U_{gh}||
  VerificationReport adjoint;    // ||U_g^dagger - U_{g^{-1}}||
  VerificationReport isometry;   // max |<U u, U v> - <u, v>| on basis pairs

  bool pass() const { return unitarity.pass && group_law.pass && adjoint.pass && isometry.pass; }
};

UnitaryReport verify_unitaries(const GnsRepresentation& r, const GnsUnitaries& u,
                               double tolerance = 1e-9);

// max over g, probes of ||U_g^dagger pi(a) U_g - pi(g^{-1}(a))||.
VerificationReport verify_covariance(const GnsRepresentation& r, const GnsUnitaries& u,
                                     const std::vector<LocalOperator>& probes,
                                     double tolerance = 1e-9);

// |H|^{-1} sum_{g in H} U_g^dagger A U_g for a subgroup H of the unitaries'
// group; throws InvalidArgument for an element outside it.
CMatrix lift_conditional_expectation(const GnsRepresentation& r, const GnsUnitaries& u,
                                     const PermutationGroup& subgroup, const CMatrix& op);

// max over probes of ||lifted(pi(a)) - pi(E_H(a))||.
VerificationReport verify_lifted_expectation(const GnsRepresentation& r,
                                             const GnsUnitaries& u,
                                             const PermutationGroup& subgroup,
                                             const std::vector<LocalOperator>& probes,
                                             double tolerance = 1e-9);

// max over probes of ||lifted_large(lifted_small(pi(a))) - lifted_large(pi(a))||.
VerificationReport lifted_projectivity(const GnsRepresentation& r, const GnsUnitaries& u,
                                       const PermutationGroup& small,
                                       const PermutationGroup& large,
                                       const std::vector<LocalOperator>& probes,
                                       double tolerance = 1e-9);

}  // namespace quasinv
