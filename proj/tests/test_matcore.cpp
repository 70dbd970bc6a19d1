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
#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"

namespace quasinv {
namespace {

CMatrix diag(std::initializer_list<double> v) { return oracle::diag(v); }

TEST(Matcore, OperatorNormOfDiagonalAndIdentity) {
  EXPECT_DOUBLE_EQ(operator_norm(identity(3)), 1.0);
  EXPECT_NEAR(operator_norm(diag({1.5, 0.5})), 1.5, 1e-15);
}

TEST(Matcore, OperatorNormMatchesGramOracle) {
  const CMatrix a = random_matrix(5, 5, 3);
  EXPECT_NEAR(operator_norm(a), oracle::norm(a), 1e-12);
}

TEST(Matcore, KronMatchesIndexOracle) {
  const CMatrix a = random_matrix(2, 3, 11);
  const CMatrix b = random_matrix(3, 2, 12);
  EXPECT_LT((kron(a, b) - oracle::kron(a, b)).norm(), 1e-14);
}

TEST(Matcore, TreeSumIsOrderFixedSum) {
  std::vector<CMatrix> terms;
  CMatrix plain = CMatrix::Zero(2, 2);
  for (int i = 0; i < 7; ++i) {
    terms.push_back(random_matrix(2, 2, 40 + i));
    plain += terms.back();
  }
  EXPECT_LT((tree_sum(terms) - plain).norm(), 1e-14);
  EXPECT_THROW(tree_sum({}), Error);
}

TEST(Matcore, HermitianValidation) {
  EXPECT_NO_THROW(HermitianMatrix(diag({1.0, 2.0})));
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  try {
    HermitianMatrix h(a);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Matcore, SpectralDecomposeIdentityAndDiagonal) {
  const Spectrum s = spectral_decompose(HermitianMatrix(identity(2)));
  EXPECT_NEAR(s.values(0), 1.0, 1e-15);
  EXPECT_NEAR(s.values(1), 1.0, 1e-15);
  EXPECT_LT((s.vectors - identity(2)).norm(), 1e-15);

  const Spectrum t = spectral_decompose(HermitianMatrix(diag({3.0, 1.0})));
  EXPECT_NEAR(t.values(0), 1.0, 1e-15);
  EXPECT_NEAR(t.values(1), 3.0, 1e-15);
  CMatrix swapped = CMatrix::Zero(2, 2);
  swapped(1, 0) = 1.0;
  swapped(0, 1) = 1.0;
  EXPECT_LT((t.vectors - swapped).norm(), 1e-15);
}

TEST(Matcore, SpectralReconstruction) {
  const HermitianMatrix h(random_hermitian(4, 7));
  const Spectrum s = spectral_decompose(h);
  const CMatrix back = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  EXPECT_LT(operator_norm(back - h.matrix()), 1e-12);
  for (Eigen::Index i = 1; i < s.values.size(); ++i) EXPECT_LE(s.values(i - 1), s.values(i));
}

TEST(Matcore, MatrixPowerExamples) {
  EXPECT_LT(operator_norm(matrix_power(diag({4.0, 9.0}), 0.5) - diag({2.0, 3.0})), 1e-14);
  const CMatrix p = random_density(3, 0.1, 2).matrix();
  EXPECT_LT(operator_norm(matrix_power(p, 0.0) - identity(3)), 1e-15);
  EXPECT_LT(operator_norm(matrix_power(diag({2.0 / 3, 1.0 / 3}), -1.0) - diag({1.5, 3.0})), 1e-13);
  const CMatrix half = matrix_power(p, 0.5);
  EXPECT_LT(operator_norm(half * half - p), 1e-13);
}

TEST(Matcore, MatrixPowerRejectsSingular) {
  try {
    matrix_power(diag({1.0, 0.0}), 0.5);
    FAIL() << "expected NotPositive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
  }
}

TEST(Matcore, ClassifyExamples) {
  const Classification id = classify(identity(2));
  EXPECT_TRUE(id.hermitian && id.positive && id.invertible);
  EXPECT_DOUBLE_EQ(*id.min_eig, 1.0);
  EXPECT_DOUBLE_EQ(*id.max_eig, 1.0);

  CMatrix nil = CMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  const Classification n = classify(nil);
  EXPECT_FALSE(n.hermitian || n.positive || n.invertible);
  EXPECT_FALSE(n.min_eig.has_value());

  const Classification x = classify(diag({1.0, 3.0, 1.0 / 3, 1.0}));
  EXPECT_TRUE(x.hermitian && x.positive && x.invertible);
  EXPECT_NEAR(*x.min_eig, 1.0 / 3, 1e-15);
  EXPECT_NEAR(*x.max_eig, 3.0, 1e-15);
}

TEST(Matcore, RandomDensityDeterministicAndFloored) {
  const DensityMatrix a = random_density(2, 0.1, 1);
  const DensityMatrix b = random_density(2, 0.1, 1);
  EXPECT_TRUE(a.matrix() == b.matrix());

  const DensityMatrix tight = random_density(2, 0.49, 9);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(tight.matrix());
  EXPECT_GE(es.eigenvalues()(0), 0.49 - 1e-12);
  EXPECT_LE(es.eigenvalues()(1), 0.51 + 1e-12);
  EXPECT_NEAR(tight.matrix().trace().real(), 1.0, 1e-13);

  try {
    random_density(2, 0.6, 1);
    FAIL() << "expected FloorTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FloorTooLarge);
  }
}

TEST(Matcore, DensityRejectsBadTraceAndNegative) {
  EXPECT_THROW(DensityMatrix(diag({0.6, 0.6}), 0.1), Error);
  EXPECT_THROW(DensityMatrix(diag({1.2, -0.2}), 0.1), Error);
}

TEST(Matcore, RandomUnitaryIsUnitary) {
  const CMatrix u = random_unitary(4, 5);
  EXPECT_LT(operator_norm(u.adjoint() * u - identity(4)), 1e-13);
}

TEST(Matcore, CheckedInverseThrowsGivenCode) {
  try {
    checked_inverse(diag({1.0, 0.0}), ErrorCode::SingularKappa);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularKappa);
  }
}

}  // namespace
}  // namespace quasinv
