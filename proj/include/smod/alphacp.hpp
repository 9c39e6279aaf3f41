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

// α-completely positive maps τ: 𝒜 → 𝓑^a(E₁) and their certificates.
//
// A map is α-CP when it is *-preserving and
//   (i)   τ(α(a)) = U₁*τ(a)U₁ = τ(a),
//   (ii)  Σ ⟨x_i, τ(α(a_i)* a_j) x_j⟩ ⪰ 0,
//   (iii) the same form with a_i ↦ a·a_i is dominated by M(a) times (ii).
// Tuples are spanned by the generators a_p ⊗ e_q δ_t, so (ii) is a PSD test of
// one Gram matrix G and (iii) reduces to G·M_a vanishing on null(G) plus a
// generalized eigenvalue on range(G), with M_a = L(a) ⊗ I.

#ifndef SMOD_ALPHACP_HPP_
#define SMOD_ALPHACP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "smod/hmodule.hpp"

namespace smod {

/// τ stored by its values on the canonical basis of the domain, as m₁×m₁
/// left-multiplication matrices on the carrier E₁.
struct OperatorCpMap {
  BlockAlgebra domain;
  SModule carrier;
  std::vector<Matrix> on_basis;

  Matrix at(const Eigen::Ref<const Vector>& coords) const;
  Matrix at(const AlgebraElement& a) const { return at(a.coords()); }
  // Throws DimensionMismatch unless there is one m₁×m₁ matrix per basis element.
  void check_shapes() const;
};

/// Generator Gram matrix indexed (p, q, t) ↦ (p·d₁ + q)·n + t. With a_left = a
/// every a_p is replaced by a·a_p. The raw matrix is returned; callers decide
/// what to do with a Hermiticity defect.
Matrix twisted_gram_raw(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                        const std::optional<AlgebraElement>& a_left = std::nullopt);

/// Symmetrized twisted Gram matrix. Throws NonHermitianKernel when
/// ‖G − G*‖_F > residual_tol·max(1, ‖G‖_F).
Matrix twisted_gram(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                    const std::optional<AlgebraElement>& a_left = std::nullopt, const Tolerances& tol = {});

/// Null space / range split of a PSD Gram matrix, reused for every
/// domination question asked about it.
class GramPencil {
 public:
  GramPencil(const Matrix& gram, double scale, const Tolerances& tol);

  double min_eig() const { return min_eig_; }
  Index rank() const { return range_.cols(); }
  // ‖G·M·Z‖₂ / scale where Z spans null(G).
  double leak(const Matrix& m) const;
  // λ_max(C* H C) with C = Q₊Λ₊^{-1/2}: the least M with H ⪯ M·G on range(G).
  double max_ratio(const Matrix& h) const;
  // Leak of an arbitrary Hermitian H on null(G), normalized by scale^power.
  double null_leak(const Matrix& h, int power) const;

 private:
  Matrix gram_;
  Matrix range_;    // Q₊Λ₊^{-1/2}
  Matrix null_;     // Z
  double scale_ = 1;
  double min_eig_ = 0;
};

struct AlphaCpCertificate {
  double cond_i_residual = 0;
  double star_residual = 0;
  double adjointable_residual = 0;
  double gram_hermiticity_residual = 0;
  double gram_min_eig = 0;
  double scale = 1;
  double cond_iii_nullspace_leak = 0;
  std::vector<double> domination_table;  // M(a_s) per basis index
  std::optional<double> lemma_domination_M;
  Index gram_rank = 0;
  bool verdict = false;
  Report report;
};

AlphaCpCertificate verify_alpha_cp(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                                   const Tolerances& tol = {});

/// Least M with twisted_gram(τ, α, a) ⪯ M·twisted_gram(τ, α) on range(G);
/// nullopt when the null space leaks.
std::optional<double> minimal_domination_constant(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                                                  const AlgebraElement& a, const Tolerances& tol = {});

/// τ-valued map between module coefficient algebras, given on the canonical
/// basis of the domain.
struct AlgebraMap {
  BlockAlgebra domain;
  BlockAlgebra codomain;
  std::vector<AlgebraElement> on_basis;

  AlgebraElement at(const Eigen::Ref<const Vector>& coords) const;
};

/// Module form: T is a d_F×d_E coordinate matrix, E over τ's domain and F
/// over its codomain. Residual "tau_map".
Report verify_tau_map(const Matrix& t, const AlgebraMap& tau, const ConcreteModule& e, const ConcreteModule& f,
                      const Tolerances& tol = {});

/// Operator form: T(e_q) ∈ 𝓑^a(E₁, E₂) for each basis element of E, compared
/// against τ(⟨e_q, e_q′⟩) on E₁'s column space.
Report verify_tau_map(const std::vector<Matrix>& t_on_basis, const OperatorCpMap& tau, const ConcreteModule& e,
                      const Tolerances& tol = {});

/// Block matrix [τ(E_rs)] for a single-block domain M_k.
Matrix choi_matrix(const OperatorCpMap& tau);

// Spectral norm of τ(1) on the carrier's column space, falling back to ‖G‖₂
// and then 1 when that vanishes.
double certificate_scale(const OperatorCpMap& tau, const Matrix& gram);

}  // namespace smod

#endif  // SMOD_ALPHACP_HPP_
