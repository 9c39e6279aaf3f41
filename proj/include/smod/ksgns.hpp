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

// KSGNS dilation of an α-CP map and τ-map factorization.
//
// The space H₀ is the quotient of 𝒜 ⊗ E₁ ⊗ ℂⁿ by the null space of the twisted
// Gram form, built once by psd_quotient; E₀ is the module of induced maps
// ℂⁿ → H₀. Generator actions
//
//   U₀:    a ⊗ x ↦ α(a) ⊗ U₁x
//   π′₀(b): a ⊗ x ↦ ba ⊗ x
//   V:     x ↦ 1 ⊗ U₁x
//
// are fitted on quotient coordinates and their fit residuals certify that
// each map is well defined; π₀ = π′₀ ∘ α. Sot-closures in the factorization
// are identities at finite dimension, so E₃ = E₀ and Ψ = Ψ₀.

#ifndef SMOD_KSGNS_HPP_
#define SMOD_KSGNS_HPP_

#include "smod/alphacp.hpp"

namespace smod {

struct KsgnsDilation {
  Index h0_dim = 0;
  ModulePtr e0;
  Matrix u0;                // h0 × h0
  std::vector<Matrix> pi0;  // π₀(a_s), h0 × h0
  Matrix v;                 // h0 × m₁, zero off E₁'s column space
  Report certificate;
};

/// Throws NotAlphaCp when verify_alpha_cp fails and IllDefinedQuotientMap
/// when a generator-defined map does not descend to the quotient.
KsgnsDilation construct_ksgns(const OperatorCpMap& tau, const StarAutomorphism& alpha, const Tolerances& tol = {});

/// Recomputes every conclusion of the dilation theorem from the stored
/// matrices alone, so it also audits deserialized dilations.
Report verify_dilation(const KsgnsDilation& d, const OperatorCpMap& tau, const StarAutomorphism& alpha,
                       const Tolerances& tol = {});

struct TauMapFactorization {
  ModulePtr e4;                     // realized on the column span of T(E)E₁
  Matrix w;                         // E₂ → E₄, WW* = I
  std::vector<Matrix> psi_on_basis;  // Ψ(e_q): E₀ → E₄
  Report certificate;
};

/// T(e_q) ∈ 𝓑^a(E₁, E₂) for each basis element of E. Throws U2NotIdentity,
/// NotTauMap or IllDefinedQuotientMap.
TauMapFactorization factorize_tau_map(const std::vector<Matrix>& t_on_basis, const ConcreteModule& e,
                                      const SModule& s2, const OperatorCpMap& tau, const StarAutomorphism& alpha,
                                      const KsgnsDilation& d, const Tolerances& tol = {});

}  // namespace smod

#endif  // SMOD_KSGNS_HPP_
