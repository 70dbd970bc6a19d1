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


// Randomized sweeps. Every case is drawn from a seeded generator so failures
// reproduce; the seed is printed with the assertion.

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "quasinv/compact.hpp"
#include "quasinv/gns.hpp"
#include "quasinv/qmc.hpp"

namespace quasinv {
namespace {

constexpr int kCases = 25;

Permutation random_permutation(Rng& rng, int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
  }
  return Permutation(img);
}

ProductState random_product(Rng& rng, int d, int sites) {
  std::vector<DensityMatrix> ws;
  for (int i = 0; i < sites; ++i) ws.push_back(random_density(d, 0.05, rng.next_u64()));
  return ProductState(ws);
}

TEST(Properties, ActionIsAHomomorphism) {
  Rng rng(101);
  for (int c = 0; c < kCases; ++c) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 2);
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const Window w(d, n);
    const Permutation g = random_permutation(rng, n);
    const Permutation h = random_permutation(rng, n);
    const LocalOperator a{w, random_matrix(w.dim(), w.dim(), rng.next_u64())};
    const LocalOperator b{w, random_matrix(w.dim(), w.dim(), rng.next_u64())};
    EXPECT_LT(operator_norm(act(g * h, a).matrix() - act(g, act(h, a)).matrix()), 1e-12) << c;
    EXPECT_LT(operator_norm(act(g, a * b).matrix() - (act(g, a) * act(g, b)).matrix()), 1e-12) << c;
    EXPECT_LT(operator_norm(act_inverse(g, act(g, a)).matrix() - a.matrix()), 1e-13) << c;
    EXPECT_LT((act(g, a).matrix() - oracle::permute(g.image(), a.matrix(), d)).norm(), 1e-13) << c;
  }
}

TEST(Properties, ProductCocyclesSatisfyTheAxioms) {
  Rng rng(202);
  for (int c = 0; c < kCases; ++c) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const int degree = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - 1));
    const ProductState phi = random_product(rng, 2, n);
    const PermutationGroup group = PermutationGroup::symmetric(degree, n);
    const CocycleTable t = product_state_cocycle(phi, group);
    EXPECT_TRUE(verify_normalization(t).pass) << c;
    EXPECT_LT(verify_cocycle_law(t).residual, 1e-9) << c;
    EXPECT_LT(verify_inverse_relation(t).residual, 1e-9) << c;
    EXPECT_TRUE(verify_quasi_invariance(phi, t, default_probes(phi.window(), rng.next_u64())).pass)
        << c;
    const CocycleTable direct = cocycle_from_state(phi, group);
    for (const Permutation& g : group.elements()) {
      EXPECT_LT(operator_norm(direct.at(g).matrix() - t.at(g).matrix()), 1e-9 * t.scale()) << c;
    }
  }
}

TEST(Properties, QuasiInvarianceAgainstTraceOracle) {
  Rng rng(303);
  for (int c = 0; c < kCases; ++c) {
    const ProductState phi = random_product(rng, 2, 3);
    const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
    const CocycleTable t = product_state_cocycle(phi, s3);
    const Permutation g = random_permutation(rng, 3);
    const oracle::Mat a = random_matrix(8, 8, rng.next_u64());
    const Complex lhs = oracle::trace_product(phi.density(), oracle::permute(g.image(), a, 2));
    const Complex rhs = oracle::trace_product(phi.density(), t.at(g).matrix() * a);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs))) << c;
  }
}

TEST(Properties, HaarAverageIsAProjection) {
  Rng rng(404);
  for (int c = 0; c < kCases; ++c) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    const Window w(2, n);
    const PermutationGroup g = rng.uniform() < 0.5 ? PermutationGroup::symmetric(n, n)
                                                   : PermutationGroup::cyclic(Permutation::shift(n));
    const LocalOperator a{w, random_matrix(w.dim(), w.dim(), rng.next_u64())};
    const LocalOperator e = haar_average(g, a);
    EXPECT_LT(operator_norm(haar_average(g, e).matrix() - e.matrix()), 1e-13) << c;
    const LocalOperator p = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(haar_average(g, p).matrix(), Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues()(0), -1e-12) << c;
  }
}

TEST(Properties, StructureAndConverseOnDiagonalStates) {
  Rng rng(505);
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  for (int c = 0; c < 10; ++c) {
    std::vector<DensityMatrix> ws;
    for (int i = 0; i < 3; ++i) {
      const double p = 0.1 + 0.8 * rng.uniform();
      ws.emplace_back(oracle::diag({p, 1 - p}), std::min(p, 1 - p));
    }
    const ProductState phi(ws);
    const CocycleTable t = product_state_cocycle(phi, s3);
    const StructureReport s = verify_structure(phi, t, matrix_unit_probes(phi.window()));
    EXPECT_TRUE(s.pass()) << c;
    const ConverseResult r = converse_construct(invariant_state(phi, s3), s.kappa, s3);
    EXPECT_LT(operator_norm(r.phi.density() - phi.density()), 1e-10) << c;
  }
}

TEST(Properties, DiagonalMarkovChains) {
  Rng rng(606);
  const DensityMatrix half(identity(2) / 2.0, 0.5);
  for (int c = 0; c < 10; ++c) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    const MarkovState m(half, default_diagonal_chain(n, rng.next_u64() | 1));
    // Supported inside the chain; the window adds one more site.
    const Permutation g = random_permutation(rng, n);
    const auto probes = default_probes(m.window(), rng.next_u64());
    EXPECT_LT(sandwich_residual(m, g, probes), 1e-9) << c;
    EXPECT_LT(y_truncation_residual(m, g), 1e-12) << c;
    const LocalOperator y = y_cocycle(m, g);
    const LocalOperator x = x_cocycle_commuting(m, g);
    EXPECT_LT(operator_norm(x.matrix() - y.matrix() * y.matrix().adjoint()), 1e-9) << c;
  }
}

TEST(Properties, GnsUnitariesOnRandomProducts) {
  Rng rng(707);
  for (int c = 0; c < 6; ++c) {
    std::vector<DensityMatrix> ws;
    for (int i = 0; i < 2; ++i) {
      const double p = 0.1 + 0.8 * rng.uniform();
      ws.emplace_back(oracle::diag({p, 1 - p}), std::min(p, 1 - p));
    }
    const ProductState phi(ws);
    const GnsRepresentation r(phi);
    const GnsUnitaries u = build_unitaries(r, product_state_cocycle(phi, PermutationGroup::symmetric(2, 2)));
    EXPECT_TRUE(verify_unitaries(r, u).pass()) << c;
    EXPECT_TRUE(verify_covariance(r, u, matrix_unit_probes(phi.window())).pass) << c;
  }
}

}  // namespace
}  // namespace quasinv
