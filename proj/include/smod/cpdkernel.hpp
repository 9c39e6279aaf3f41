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

// α-CPD kernels 𝔎^{σ,σ′}: ℬ → 𝒞 over a finite index set Ω, and the
// reproducing kernel S-correspondence they generate.
//
// Positivity is tested on the scalarized Gram matrix over (σ, p, t) with
// entries δ_t* 𝔎^{σ,σ′}(α(b_p)* b_p′) δ_t′. Arbitrary 𝒞-coefficients c_i add
// nothing: 1 ∈ 𝒞 gives 𝒞·ℂ^r = ℂ^r, so the vectors c_i δ_t already range over
// ℂ^r. Domination is certified in the operator order G_b ⪯ M·G, which implies
// the norm inequality; only that direction is claimed.
//
// Elements of the correspondence are hf×r matrices; b_p k_σ is the generator
// block of the quotient coordinates and (b_p k_σ″)(σ, b_s) = 𝔎^{σ,σ″}(b_s b_p).

#ifndef SMOD_CPDKERNEL_HPP_
#define SMOD_CPDKERNEL_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "smod/alphacp.hpp"
#include "smod/instances.hpp"

namespace smod {

struct Kernel {
  std::vector<std::string> omega;
  BlockAlgebra source;         // ℬ
  BlockAlgebra target;         // 𝒞
  std::vector<Matrix> values;  // (σ·|Ω| + σ′)·dim ℬ + p, ambient r×r

  Index size() const { return Index(omega.size()); }
  const Matrix& value(Index s, Index s2, Index p) const {
    return values[std::size_t((s * size() + s2) * source.dim() + p)];
  }
  Matrix at(Index s, Index s2, const Eigen::Ref<const Vector>& coords) const;
  // DimensionMismatch on wrong counts or shapes; InvalidArgument when a
  // value leaves 𝒞.
  void check_shapes(const Tolerances& tol = {}) const;
};

// max ‖𝔎^{σ,σ′}(b_p*) − 𝔎^{σ′,σ}(b_p)*‖_F.
double kernel_hermiticity_residual(const Kernel& k);

Matrix kernel_gram(const Kernel& k, const StarAutomorphism& alpha);

struct CpdCertificate {
  double hermiticity_residual = 0;
  double alpha_invariance_residual = 0;
  double gram_min_eig = 0;
  double scale = 1;
  double cond_iii_nullspace_leak = 0;
  std::vector<double> domination_table;
  Index gram_rank = 0;
  bool verdict = false;
  Report report;
};

/// Throws NonHermitianKernel before any positivity work.
CpdCertificate verify_alpha_cpd(const Kernel& k, const StarAutomorphism& alpha, const Tolerances& tol = {});

/// Least M with G_b ⪯ M·G on range(G), where G_b replaces every b_p by b·b_p;
/// nullopt when null(G) leaks under b.
std::optional<double> kernel_domination_constant(const Kernel& k, const StarAutomorphism& alpha,
                                                 const AlgebraElement& b, const Tolerances& tol = {});

struct KFamily {
  Kernel kernel;
  ModulePtr e;               // over ℬ
  ModulePtr f;               // over 𝒞
  std::vector<Matrix> maps;  // per σ, d_F × d_E on coordinates
};

// Residual "kfamily_law": ⟨𝒦^σ(e_q), 𝒦^σ′(e_q′)⟩ = 𝔎^{σ,σ′}(⟨e_q, e_q′⟩).
Report verify_kfamily(const KFamily& fam, const Tolerances& tol = {});

struct RksCorrespondence {
  Index hf_dim = 0;
  Matrix generators;                    // hf × (|Ω|·dim ℬ·r), block (σ, p) realizes b_p k_σ
  ModulePtr fmodule;                    // over 𝒞, elements hf × r
  Matrix u;                             // [f, g] = ⟨f, Ug⟩
  std::vector<Matrix> pi_on_basis;      // π(b_s)
  std::vector<Matrix> kernel_elements;  // k_σ, hf × r
  Report certificate;

  Matrix generator(Index sigma, Index p, Index dim_b, Index r) const {
    return generators.middleCols((sigma * dim_b + p) * r, r);
  }
};

/// Throws NotAlphaCpd or IllDefinedQuotientMap.
RksCorrespondence construct_correspondence(const Kernel& k, const StarAutomorphism& alpha,
                                           const Tolerances& tol = {});

Report verify_reproducing(const RksCorrespondence& c, const Kernel& k, const StarAutomorphism& alpha,
                          const Tolerances& tol = {});

// 𝔎′^{σ,σ′}(b_p) = ⟨k_σ, π(b_p) k_σ′⟩, shaped like the template kernel.
Kernel rederive_kernel(const RksCorrespondence& c, const Kernel& like);

/// ⟨𝒦^σ(xb)c, 𝒦^σ′(x′b′)c′⟩ = ⟨α(b)k_σc, ⟨x,x′⟩b′k_σ′c′⟩ over basis tuples,
/// plus the 𝔎-family law. Right 𝒞-linearity reduces c, c′ to the unit.
Report verify_kfamily_factorization(const KFamily& fam, const RksCorrespondence& c, const StarAutomorphism& alpha,
                                    const Tolerances& tol = {});

/// ν(x ⊗ bk_σc) = 𝒦^σ(xb)c is isometric when α = id. Throws AlphaNotIdentity.
Report nu_isometry_check(const KFamily& fam, const RksCorrespondence& c, const StarAutomorphism& alpha,
                         const Tolerances& tol = {});

struct KernelSizes {
  Index omega = 2;
  Index first_block = 2;   // ℬ₁ = M_n₁, the summand the kernel sees
  Index second_block = 1;  // ℬ₂ = M_n₂, 0 to omit; twisted under F2
  Index target_block = 1;  // 𝒞 = M_r
  Index multiplicity = 1;  // ρ(b₁) = b₁ ⊗ I_μ
  Index module_rows = 2;   // rows of E over ℬ₁

  static KernelSizes level(int s);
};

inline constexpr Index kMaxOmega = 16;

struct KernelInstance {
  Kernel kernel;
  StarAutomorphism alpha;
  std::optional<KFamily> family;
  bool expected_pass = true;
  std::string label;
};

/// F1: α = id; F2: α = id ⊕ Ad(u) with ℬ₂ of size ≥ 2; both use
/// 𝔎^{σ,σ′}(b) = K_σ* ρ(b₁) K_σ′ and carry a 𝔎-family. F3: seed % 2 picks
/// "hermiticity-broken" or "gram-indefinite".
KernelInstance generate_kernel_instance(Family family, const KernelSizes& sizes, std::uint64_t seed);

// ℬ = 𝒞 = ℂ, 𝔎^{σ,σ′}(b) = K_{σσ′}·b.
Kernel scalar_kernel(const Matrix& k);

}  // namespace smod

#endif  // SMOD_CPDKERNEL_HPP_
