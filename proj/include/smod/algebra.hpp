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

// Finite-dimensional C*-algebras  M_{n_1} ⊕ … ⊕ M_{n_k}  embedded
// block-diagonally in M_n, n = Σ n_i.
//
// Canonical basis: matrix units E_rs of each block, blocks in order, (r, s)
// row-major within a block. The coordinate vector of an element is therefore
// the concatenation of its blocks read row-major. Every Gram matrix and file
// format in the library is indexed by this order.

#ifndef SMOD_ALGEBRA_HPP_
#define SMOD_ALGEBRA_HPP_

#include <vector>

#include "smod/numkit.hpp"
#include "smod/report.hpp"

namespace smod {

class BlockAlgebra {
 public:
  explicit BlockAlgebra(std::vector<Index> block_dims);

  // M_n
  static BlockAlgebra full(Index n) { return BlockAlgebra({n}); }

  const std::vector<Index>& block_dims() const { return dims_; }
  Index num_blocks() const { return Index(dims_.size()); }
  Index block_dim(Index i) const { return dims_[std::size_t(i)]; }
  Index ambient_dim() const { return ambient_; }
  Index dim() const { return dim_; }
  // Row/column offset of block i inside the ambient n×n matrix.
  Index block_offset(Index i) const { return row_offsets_[std::size_t(i)]; }
  // Offset of block i inside the coordinate vector.
  Index coord_offset(Index i) const { return coord_offsets_[std::size_t(i)]; }

  bool operator==(const BlockAlgebra& other) const { return dims_ == other.dims_; }

 private:
  std::vector<Index> dims_;
  std::vector<Index> row_offsets_;
  std::vector<Index> coord_offsets_;
  Index ambient_ = 0;
  Index dim_ = 0;
};

class AlgebraElement {
 public:
  AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks);

  static AlgebraElement zero(const BlockAlgebra& algebra);
  static AlgebraElement identity(const BlockAlgebra& algebra);
  static AlgebraElement from_coords(const BlockAlgebra& algebra, const Eigen::Ref<const Vector>& coords);
  // Diagonal blocks of an ambient matrix; off-block entries are discarded.
  static AlgebraElement from_ambient(const BlockAlgebra& algebra, const Eigen::Ref<const Matrix>& m);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(Index i) const { return blocks_[std::size_t(i)]; }

  Vector coords() const;
  Matrix embed() const;
  AlgebraElement adjoint() const;
  // C*-norm: the largest block operator norm.
  double norm() const;
  // Frobenius norm of the embedding.
  double frobenius() const;

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(Complex z, const AlgebraElement& a);

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

std::vector<AlgebraElement> canonical_basis(const BlockAlgebra& algebra);

// Coordinates of the unit: 1 is the sum of the diagonal matrix units.
Vector unit_coords(const BlockAlgebra& algebra);

// Index of a_p* in the canonical basis (E_rs* = E_sr).
Index adjoint_index(const BlockAlgebra& algebra, Index p);

// L with coords(a·b) = L · coords(b).
Matrix left_multiplication_matrix(const AlgebraElement& a);

// Coordinates of a_p·a_q for all basis pairs, as a list indexed p·dim + q.
// Products of matrix units are zero or a single matrix unit, so this is
// stored as the resulting basis index, or -1 for zero.
std::vector<Index> basis_product_table(const BlockAlgebra& algebra);

/// A *-automorphism stored structurally: block i is sent to block perm[i] and
/// conjugated there, α(a)_{perm[i]} = u_{perm[i]} · a_i · u_{perm[i]}*.
class StarAutomorphism {
 public:
  StarAutomorphism(BlockAlgebra algebra, std::vector<Index> perm, std::vector<Matrix> unitaries);

  static StarAutomorphism identity(const BlockAlgebra& algebra);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Index>& perm() const { return perm_; }
  const std::vector<Matrix>& unitaries() const { return unitaries_; }

  AlgebraElement apply(const AlgebraElement& a) const;
  StarAutomorphism inverse() const;
  // Column k holds coords(α(a_k)).
  Matrix action_matrix() const;
  bool is_identity(double tol = 1e-12) const;

 private:
  BlockAlgebra algebra_;
  std::vector<Index> perm_;
  std::vector<Matrix> unitaries_;
};

AlgebraElement apply_automorphism(const StarAutomorphism& alpha, const AlgebraElement& a);

/// Residuals of the *-automorphism axioms over the canonical basis:
/// "unital", "multiplicative", "star" and "bijective" (rank deficiency of the
/// action matrix). Passes iff all are ≤ residual_tol.
Report verify_automorphism(const StarAutomorphism& alpha, const Tolerances& tol = {});

/// Same residual harness for an arbitrary linear map given by its action
/// matrix on the canonical basis (column k = coords of the image of a_k).
Report verify_action(const BlockAlgebra& algebra, const Matrix& action, const Tolerances& tol = {});

struct AlgebraProjection {
  AlgebraElement elem;
  double off_block_mass = 0;
};

// Membership test for ℬ ⊆ M_n: mass ≤ residual_tol certifies M ∈ ℬ.
AlgebraProjection project_to_algebra(const Eigen::Ref<const Matrix>& m, const BlockAlgebra& algebra);

}  // namespace smod

#endif  // SMOD_ALGEBRA_HPP_
