// Copyright 2026 The smod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "smod/algebra.hpp"
#include "smod/random.hpp"

namespace smod {
namespace {

Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

TEST(CanonicalBasis, MatrixUnitsRowMajor) {
  const auto basis = canonical_basis(BlockAlgebra::full(2));
  ASSERT_EQ(basis.size(), 4u);
  for (Index k = 0; k < 4; ++k) {
    Matrix e = Matrix::Zero(2, 2);
    e(k / 2, k % 2) = 1;
    EXPECT_EQ(basis[std::size_t(k)].embed(), e);
  }
}

TEST(CanonicalBasis, TwoOneDimensionalBlocks) {
  const auto basis = canonical_basis(BlockAlgebra({1, 1}));
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0].embed(), Matrix(Eigen::Vector2cd(1, 0).asDiagonal()));
  EXPECT_EQ(basis[1].embed(), Matrix(Eigen::Vector2cd(0, 1).asDiagonal()));
}

TEST(CanonicalBasis, DiagonalUnitsPartitionIdentity) {
  const BlockAlgebra a({2, 1});
  const auto basis = canonical_basis(a);
  ASSERT_EQ(basis.size(), 5u);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& b : basis) {
    const Matrix e = b.embed();
    if ((e * e - e).norm() == 0 && (e - e.adjoint()).norm() == 0) sum += e;
  }
  EXPECT_EQ(sum, Matrix::Identity(3, 3));
  const Vector unit = unit_coords(a);
  EXPECT_EQ(AlgebraElement::from_coords(a, unit).embed(), Matrix::Identity(3, 3));
}

TEST(AlgebraElement, EmbeddingIsStarHomomorphism) {
  Rng rng(3);
  const BlockAlgebra a({2, 3});
  const auto x = AlgebraElement::from_coords(a, rng.matrix(a.dim(), 1));
  const auto y = AlgebraElement::from_coords(a, rng.matrix(a.dim(), 1));
  EXPECT_LE(((x * y).embed() - x.embed() * y.embed()).norm(), 1e-14);
  EXPECT_EQ(x.adjoint().embed(), x.embed().adjoint());
  EXPECT_EQ(x.adjoint().adjoint().embed(), x.embed());
}

TEST(ProductTable, MatchesMatrixProducts) {
  const BlockAlgebra a({2, 1});
  const auto basis = canonical_basis(a);
  const auto table = basis_product_table(a);
  for (Index p = 0; p < a.dim(); ++p)
    for (Index q = 0; q < a.dim(); ++q) {
      const Matrix prod = basis[std::size_t(p)].embed() * basis[std::size_t(q)].embed();
      const Index k = table[std::size_t(p * a.dim() + q)];
      if (k < 0) {
        EXPECT_EQ(prod.norm(), 0.0);
      } else {
        EXPECT_EQ(prod, basis[std::size_t(k)].embed());
      }
    }
}

TEST(StarAutomorphism, PauliConjugationSwapsDiagonalUnits) {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  const StarAutomorphism alpha(m2, {0}, {pauli_x()});
  const auto basis = canonical_basis(m2);
  EXPECT_LE((apply_automorphism(alpha, basis[0]).embed() - basis[3].embed()).norm(), 1e-15);
  EXPECT_TRUE(verify_automorphism(alpha).pass());
}

TEST(StarAutomorphism, BlockSwapIsInvolution) {
  const BlockAlgebra a({1, 1});
  const StarAutomorphism swap(a, {1, 0}, {Matrix::Identity(1, 1), Matrix::Identity(1, 1)});
  Vector c(2);
  c << Complex(2, 1), Complex(-3, 0);
  const auto x = AlgebraElement::from_coords(a, c);
  const auto y = swap.apply(x);
  EXPECT_EQ(y.coords()(0), c(1));
  EXPECT_EQ(y.coords()(1), c(0));
  EXPECT_EQ(swap.apply(y).coords(), c);
}

TEST(StarAutomorphism, IdentityResidualsVanish) {
  const auto rep = verify_automorphism(StarAutomorphism::identity(BlockAlgebra({2, 1})));
  for (const auto& [name, v] : rep.values()) EXPECT_EQ(v, 0.0) << name;
}

TEST(StarAutomorphism, ActionMatrixAgreesWithApply) {
  Rng rng(5);
  const BlockAlgebra a({2, 2});
  const StarAutomorphism alpha(a, {1, 0}, {rng.unitary(2), rng.unitary(2)});
  EXPECT_TRUE(verify_automorphism(alpha).pass());
  const Matrix act = alpha.action_matrix();
  const Vector c = rng.matrix(a.dim(), 1);
  EXPECT_LE((alpha.apply(AlgebraElement::from_coords(a, c)).coords() - act * c).norm(), 1e-13);
  EXPECT_LE((alpha.inverse().action_matrix() * act - Matrix::Identity(a.dim(), a.dim())).norm(), 1e-12);
}

TEST(StarAutomorphism, RejectsDimensionChangingPermutation) {
  EXPECT_THROW(StarAutomorphism(BlockAlgebra({1, 2}), {1, 0}, {Matrix::Identity(1, 1), Matrix::Identity(2, 2)}),
               Error);
}

TEST(VerifyAction, TransposeIsNotMultiplicative) {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  Matrix act = Matrix::Zero(4, 4);
  // transpose sends E_ij to E_ji
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) act(j * 2 + i, i * 2 + j) = 1;
  const auto rep = verify_action(m2, act);
  EXPECT_FALSE(rep.pass());
  EXPECT_GE(rep.value("multiplicative"), 1.0);
}

TEST(ProjectToAlgebra, OffBlockMass) {
  const BlockAlgebra a({1, 1});
  EXPECT_EQ(project_to_algebra(Matrix::Identity(2, 2), a).off_block_mass, 0.0);
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_DOUBLE_EQ(project_to_algebra(m, a).off_block_mass, 1.0);
  EXPECT_THROW(project_to_algebra(Matrix::Identity(3, 3), a), Error);
}

}  // namespace
}  // namespace smod
