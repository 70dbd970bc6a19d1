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


#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quasinv/compact.hpp"
#include "quasinv/qmc.hpp"

namespace quasinv {
namespace {

CMatrix diag(std::initializer_list<double> v) { return oracle::diag(v); }

ProductState anchor_state() {
  return ProductState({DensityMatrix(diag({0.5, 0.5}), 0.5), DensityMatrix(diag({0.75, 0.25}), 0.25)});
}

ProductState diagonal_product(int sites, std::uint64_t seed) {
  std::vector<DensityMatrix> ws;
  Rng rng(seed);
  for (int i = 0; i < sites; ++i) {
    const double p = 0.15 + 0.7 * rng.uniform();
    ws.emplace_back(diag({p, 1.0 - p}), std::min(p, 1.0 - p));
  }
  return ProductState(ws);
}

// Group average through explicit digit permutations.
oracle::Mat average_oracle(const PermutationGroup& g, const oracle::Mat& a, int d) {
  oracle::Mat acc = oracle::Mat::Zero(a.rows(), a.cols());
  for (const Permutation& p : g.elements()) acc += oracle::permute(p.image(), a, d);
  return acc / static_cast<double>(g.size());
}

TEST(Compact, HaarAverageExamples) {
  const Window w(2, 2);
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 2);
  EXPECT_LT(operator_norm(haar_average(s2, LocalOperator::identity(w)).matrix() - identity(4)), 1e-15);
  EXPECT_LT(operator_norm(haar_average(s2, LocalOperator(w, diag({1, 2, 3, 4}))).matrix() -
                          diag({1, 2.5, 2.5, 4})),
            1e-15);
  const LocalOperator fixed = haar_average(s2, LocalOperator(w, random_matrix(4, 4, 2)));
  EXPECT_LT(operator_norm(haar_average(s2, fixed).matrix() - fixed.matrix()), 1e-15);

  const Window w3(3, 3);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  const LocalOperator a{w3, random_matrix(27, 27, 5)};
  const LocalOperator e = haar_average(s3, a);
  EXPECT_LT((e.matrix() - average_oracle(s3, a.matrix(), 3)).norm(), 1e-13);
  for (const Permutation& h : s3.elements()) {
    EXPECT_LT(operator_norm(act(h, e).matrix() - e.matrix()), 1e-13);
    EXPECT_LT(operator_norm(haar_average(s3, act(h, a)).matrix() - e.matrix()), 1e-13);
  }
  EXPECT_LE(operator_norm(e.matrix()), operator_norm(a.matrix()) + 1e-12);
}

TEST(Compact, FixedPointBasisAndDimension) {
  const Window w(2, 3);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  const auto basis = fixed_point_basis(s3, w);
  // Orbits of S3 on pairs of basis strings: dim Sym(C^2 (x)3)-commutant = 20.
  EXPECT_EQ(basis.size(), 20u);
  EXPECT_EQ(fixed_point_dimension(s3, w), 20);
  for (const LocalOperator& b : basis) {
    EXPECT_LT(operator_norm(haar_average(s3, b).matrix() - b.matrix()), 1e-14);
  }
  EXPECT_EQ(fixed_point_dimension(PermutationGroup({Permutation::identity(3)}), w), 64);
}

TEST(Compact, UmegakiSuites) {
  const Window w(2, 3);
  const auto probes = random_hermitian_probes(w, 30, 4);
  const UmegakiReport trivial = verify_umegaki(PermutationGroup({Permutation::identity(3)}), w, probes);
  EXPECT_TRUE(trivial.pass());
  EXPECT_EQ(trivial.idempotence.residual, 0.0);
  EXPECT_EQ(trivial.module_property.residual, 0.0);
  for (int degree : {2, 3}) {
    const UmegakiReport r = verify_umegaki(PermutationGroup::symmetric(degree, 3), w, probes);
    EXPECT_TRUE(r.pass()) << degree;
    EXPECT_LT(r.module_property.residual, 1e-10);
    EXPECT_GT(*r.faithfulness.detail("min_norm"), 1e-3);
  }
}

TEST(Compact, KappaAnchor) {
  const ProductState phi = anchor_state();
  const CocycleTable t = product_state_cocycle(phi, PermutationGroup::symmetric(2, 2));
  const LocalOperator k = kappa(t);
  EXPECT_LT(operator_norm(k.matrix() - diag({1, 2, 2.0 / 3, 1})), 1e-14);
  EXPECT_NEAR(std::abs(phi.evaluate(k) - 1.0), 0.0, 1e-14);

  const Window w(2, 2);
  const CocycleTable ones = trivial_cocycle(LocalOperator::identity(w), PermutationGroup::symmetric(2, 2));
  EXPECT_LT(operator_norm(kappa(ones).matrix() - identity(4)), 1e-15);

  CMatrix upper = identity(4);
  upper(0, 1) = 0.5;
  try {
    kappa(trivial_cocycle(LocalOperator(w, upper), PermutationGroup::symmetric(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStrongCocycle);
  }
}

TEST(Compact, StructureAnchorIsExact) {
  const ProductState phi = anchor_state();
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 2);
  const CocycleTable t = product_state_cocycle(phi, s2);
  const StructureReport s = verify_structure(phi, t, matrix_unit_probes(phi.window()));
  EXPECT_TRUE(s.pass());
  EXPECT_LT(s.density.residual, 1e-15);
  EXPECT_LT(s.trivialization.residual, 1e-14);
  EXPECT_LT(s.normalization.residual, 1e-14);
  EXPECT_LT(s.commutation.residual, 1e-14);
  const LocalOperator kinv{phi.window(), s.kappa.matrix().inverse()};
  EXPECT_LT(operator_norm(kinv.matrix() - diag({1, 0.5, 1.5, 1})), 1e-14);
  EXPECT_LT(operator_norm(act(Permutation::transposition(2, 1, 2), kinv).matrix() -
                          diag({1, 1.5, 0.5, 1})),
            1e-14);
  const WeightedTraceState phi_g = invariant_state(phi, s2);
  EXPECT_LT(operator_norm(phi_g.density() - diag({0.375, 0.25, 0.25, 0.125})), 1e-15);
}

TEST(Compact, StructureOnS3DiagonalStates) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ProductState phi = diagonal_product(3, seed);
    const CocycleTable t = product_state_cocycle(phi, PermutationGroup::symmetric(3, 3));
    const StructureReport s = verify_structure(phi, t, matrix_unit_probes(phi.window()));
    EXPECT_TRUE(s.pass());
    EXPECT_LT(s.trivialization.residual, 1e-9);
  }
  const ProductState ex = ProductState::homogeneous(DensityMatrix(diag({0.6, 0.4}), 0.4), 3);
  const CocycleTable t = product_state_cocycle(ex, PermutationGroup::symmetric(3, 3));
  const StructureReport s = verify_structure(ex, t, matrix_unit_probes(ex.window()));
  EXPECT_LT(operator_norm(s.kappa.matrix() - identity(8)), 1e-12);
}

TEST(Compact, ConverseRoundTrip) {
  const ProductState phi = anchor_state();
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 2);
  const CocycleTable t = product_state_cocycle(phi, s2);
  const ConverseResult r = converse_construct(invariant_state(phi, s2), kappa(t), s2);
  EXPECT_LT(operator_norm(r.phi.density() - phi.density()), 1e-14);
  const auto probes = matrix_unit_probes(phi.window());
  EXPECT_TRUE(verify_quasi_invariance(r.phi, r.table, probes).pass);

  const ConverseResult id = converse_construct(invariant_state(phi, s2),
                                               LocalOperator::identity(phi.window()), s2);
  EXPECT_LT(operator_norm(id.phi.density() - invariant_state(phi, s2).density()), 1e-15);

  try {
    converse_construct(phi, LocalOperator::identity(phi.window()), s2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariantBase);
  }
  try {
    converse_construct(invariant_state(phi, s2), LocalOperator(phi.window(), diag({1, 0, 1, 1})), s2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularKappa);
  }
}

TEST(Compact, ConverseWithNonCommutingKappa) {
  // Under S2 a zero-mean H is odd under the swap and the coboundary stays
  // hermitian; S3 leaves room for a genuinely non-commuting one.
  const Window w(2, 3);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  const WeightedTraceState tracial(w, identity(8) / 8.0);
  // kappa^{-1} = 1 + H with E_G(H) = 0 keeps E_G(kappa^{-1}) = 1.
  const CMatrix noise = random_hermitian(8, 9);
  const LocalOperator h0{w, 0.3 * noise / operator_norm(noise)};
  const LocalOperator h = h0 - haar_average(s3, h0);
  const LocalOperator kinv = LocalOperator::identity(w) + h;
  const LocalOperator k{w, kinv.matrix().inverse()};
  const ConverseResult r = converse_construct(tracial, k, s3);
  EXPECT_LT(operator_norm(haar_average(s3, kinv).matrix() - identity(8)), 1e-14);
  const auto probes = matrix_unit_probes(w);
  EXPECT_TRUE(verify_quasi_invariance(r.phi, r.table, probes).pass);
  EXPECT_TRUE(verify_cocycle_law(r.table).pass);
  EXPECT_FALSE(verify_strong(r.table, r.phi, probes).pass());
}

TEST(Compact, ProjectiveFamily) {
  const Window w(2, 3);
  const auto probes = random_hermitian_probes(w, 20, 8);
  const PermutationGroup e({Permutation::identity(3)});
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 3);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  const VerificationReport r = projective_family_check(s2, s3, probes);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_LE(*r.detail("fixed_dim_large"), *r.detail("fixed_dim_small"));
  EXPECT_LT(projective_family_check(e, s2, probes).residual, 1e-15);
  EXPECT_TRUE(projective_family_check(s3, s3, probes).pass);
  try {
    projective_family_check(s3, s2, probes);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotNested);
  }
}

TEST(Compact, RestrictionConsistency) {
  const ProductState phi = diagonal_product(3, 4);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  const CocycleTable t = product_state_cocycle(phi, s3);
  const VerificationReport r =
      restriction_consistency(phi, t, {PermutationGroup::symmetric(2, 3), PermutationGroup({Permutation::identity(3)})});
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.residual, 1e-12);

  const DensityMatrix half(identity(2) / 2.0, 0.5);
  const MarkovState m(half, default_diagonal_chain(3, 2));
  const CocycleTable mt = markov_cocycle_table(m, PermutationGroup::symmetric(3, 4));
  EXPECT_LT(restriction_consistency(m.state(), mt, {PermutationGroup::symmetric(2, 4)}).residual, 1e-9);
}

TEST(Compact, AlternativeDecomposition) {
  const ProductState phi = anchor_state();
  const CocycleTable t = product_state_cocycle(phi, PermutationGroup::symmetric(2, 2));
  const auto probes = matrix_unit_probes(phi.window());
  const AlternativeDecomposition alt = alternative_decomposition(phi, t, probes);
  EXPECT_TRUE(alt.pass());
  EXPECT_GT(operator_norm(alt.kappa.matrix() - kappa(t).matrix()), 1e-3);
  EXPECT_FALSE(alt.report.normalization.pass);
}

}  // namespace
}  // namespace quasinv
