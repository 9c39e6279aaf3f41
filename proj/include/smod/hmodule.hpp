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

// Hilbert C*-modules in the operator picture. A module over ℬ ⊆ M_n is a
// subspace E ⊆ M_{m×n} closed under right multiplication by ℬ with
// x*y ∈ ℬ for all x, y ∈ E; the inner product is ⟨x, y⟩ = x*y. Operators act
// by left multiplication with m_target × m_source matrices, which makes right
// ℬ-linearity automatic.
//
// Elements are coordinate vectors against a trace-orthonormal basis
// (tr(x_i* x_j) = δ_ij). The column space of E inside ℂ^m plays the role of
// E ⊗ 𝓗; operator identities are compared on that subspace.

#ifndef SMOD_HMODULE_HPP_
#define SMOD_HMODULE_HPP_

#include <memory>
#include <vector>

#include "smod/algebra.hpp"

namespace smod {

class ConcreteModule {
 public:
  /// Validates shapes, trace-orthonormality, right-action closure and that
  /// inner products of basis pairs land in the algebra.
  ConcreteModule(BlockAlgebra algebra, Index ambient_rows, std::vector<Matrix> basis, const Tolerances& tol = {});

  static ConcreteModule zero(const BlockAlgebra& algebra, Index ambient_rows);

  const BlockAlgebra& algebra() const { return algebra_; }
  Index ambient_rows() const { return rows_; }
  Index ambient_cols() const { return algebra_.ambient_dim(); }
  Index dim() const { return Index(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  // (m·n) × d, column k = vec(basis_k), column-major vec.
  const Matrix& vectorized() const { return vectorized_; }
  // m × (d·n), column q·n + t = basis_q · δ_t. Spans the column space.
  const Matrix& spanning_vectors() const { return spanning_; }
  // Orthonormal basis (m × r) of the column space.
  const Matrix& column_space() const { return column_space_; }

  Matrix realize(const Eigen::Ref<const Vector>& coords) const;
  // Orthogonal projection coordinates of an m×n matrix onto the span.
  Vector coordinates(const Eigen::Ref<const Matrix>& x) const;
  double distance_to_span(const Eigen::Ref<const Matrix>& x) const;

 private:
  BlockAlgebra algebra_;
  Index rows_;
  std::vector<Matrix> basis_;
  Matrix vectorized_;
  Matrix spanning_;
  Matrix column_space_;
};

using ModulePtr = std::shared_ptr<const ConcreteModule>;

inline ModulePtr share(ConcreteModule m) { return std::make_shared<const ConcreteModule>(std::move(m)); }

/// Right-ℬ closure of the generators, trace-orthonormalized. Throws
/// InnerProductEscapesAlgebra when the closure is not a ℬ-module.
ConcreteModule make_module(const BlockAlgebra& algebra, Index ambient_rows, const std::vector<Matrix>& generators,
                           const Tolerances& tol = {});

// ⊕_i M_{rows_i × n_i}, placed block-diagonally; basis = matrix units.
ConcreteModule standard_module(const BlockAlgebra& algebra, const std::vector<Index>& row_multiplicity);

// 𝒜 as a right module over itself.
ConcreteModule algebra_as_module(const BlockAlgebra& algebra);

/// ⟨x, y⟩ = X*Y for coordinate vectors x, y. Throws
/// InnerProductEscapesAlgebra if the product leaves the algebra.
AlgebraElement inner_product(const ConcreteModule& e, const Eigen::Ref<const Vector>& x,
                             const Eigen::Ref<const Vector>& y, const Tolerances& tol = {});

// C*-module norm ‖⟨x, x⟩‖^{1/2}.
double module_norm(const ConcreteModule& e, const Eigen::Ref<const Vector>& x);

class ModuleOperator {
 public:
  ModuleOperator(ModulePtr source, ModulePtr target, Matrix matrix);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  ModuleOperator adjoint() const { return ModuleOperator(target_, source_, matrix_.adjoint()); }
  // d_target × d_source matrix of the operator in module coordinates.
  Matrix coordinate_matrix() const;
  Vector apply(const Eigen::Ref<const Vector>& coords) const;

 private:
  ModulePtr source_;
  ModulePtr target_;
  Matrix matrix_;
};

/// Adjointability of left multiplication by T (m_F × m_E): T·E ⊆ F and
/// T*·F ⊆ E. Residual names "forward" and "backward"; notes
/// "forward_witness"/"backward_witness" hold the worst basis index.
Report check_adjointable(const Eigen::Ref<const Matrix>& t, const ConcreteModule& e, const ConcreteModule& f,
                         const Tolerances& tol = {});

/// (E, ℬ, U) with [x, y] = ⟨x, Uy⟩. U must be unitary on E to 1e-10.
class SModule {
 public:
  SModule(ModulePtr module, Matrix unitary, const Tolerances& tol = {});
  static SModule trivial(ModulePtr module);

  const ModulePtr& module() const { return module_; }
  const Matrix& unitary() const { return unitary_; }
  ModuleOperator unitary_operator() const { return ModuleOperator(module_, module_, unitary_); }
  // U is additionally self-adjoint: a Krein module.
  bool krein() const { return krein_; }
  // ‖U − I‖ on the column space.
  bool unitary_is_identity(double tol) const;

 private:
  ModulePtr module_;
  Matrix unitary_;
  bool krein_ = false;
};

// Unitarity defect max(‖Q*U*UQ − I‖, ‖Q*UU*Q − I‖) on E's column space.
double unitarity_defect(const Eigen::Ref<const Matrix>& u, const ConcreteModule& e);

struct NaturalAdjoint {
  ModuleOperator op;
  double pairing_residual = 0;  // max over basis of ‖⟨Tx, U₂y⟩ − ⟨x, U₁T♮y⟩‖
};

/// T♮ = U₁* T* U₂ for T: E₁ → E₂.
NaturalAdjoint natural_adjoint(const ModuleOperator& t, const SModule& s1, const SModule& s2,
                               const Tolerances& tol = {});

/// [x, y] = ⟨x, Uy⟩.
AlgebraElement sesquilinear_form(const SModule& s, const Eigen::Ref<const Vector>& x,
                                 const Eigen::Ref<const Vector>& y, const Tolerances& tol = {});

/// An algebra homomorphism π: 𝒜 → 𝓑^a(E) with π(a*) = U*π(a)*U, stored on
/// the canonical basis of 𝒜 as ambient m×m matrices.
struct URepresentation {
  BlockAlgebra algebra;
  SModule smodule;
  std::vector<Matrix> on_basis;

  Matrix at(const Eigen::Ref<const Vector>& coords) const;
};

/// Residual table: "multiplicative", "unital", "natural_symmetry" and
/// "bracket" ([π(a)x, y] = [x, π(a*)y] over all basis triples).
Report verify_u_representation(const URepresentation& pi, const Tolerances& tol = {});

}  // namespace smod

#endif  // SMOD_HMODULE_HPP_
