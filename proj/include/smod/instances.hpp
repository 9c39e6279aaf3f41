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

// Seeded α-CP and τ-map instances.
//
//   F1  α = id, U₁ = I, τ(a) = Σ_k V_k* a V_k.
//   F2  𝒜 = 𝒜₁ ⊕ M_k, α = id ⊕ Ad(u), τ(a₁ ⊕ a₂) = ψ(a₁) with ψ CP and U₁ a
//       unitary in the commutant of τ(𝒜).
//   F3  negative fixtures, picked by seed % 3: transpose, swap-average,
//       hermiticity-broken.
//
// The carrier is always E₁ = M_{m₁×r} over M_r.

#ifndef SMOD_INSTANCES_HPP_
#define SMOD_INSTANCES_HPP_

#include <cstdint>
#include <string>

#include "smod/alphacp.hpp"

namespace smod {

enum class Family { F1, F2, F3 };

Family parse_family(const std::string& name);
const char* to_string(Family family);

struct InstanceSizes {
  std::vector<Index> blocks{2};  // 𝒜, or 𝒜₁ for F2
  Index second_block = 2;        // F2: the twisted summand M_k, k ≥ 2
  Index carrier_rows = 2;        // m₁
  Index carrier_block = 1;       // r
  Index kraus = 2;

  // Monotone size ladder used by the command line: level s ≥ 1.
  static InstanceSizes level(int s);
};

inline constexpr Index kMaxAlgebraDim = 64;
inline constexpr Index kMaxCarrierRows = 16;

struct AlphaCpInstance {
  OperatorCpMap tau;
  StarAutomorphism alpha;
  bool expected_pass = true;
  std::string label;
};

AlphaCpInstance generate_instance(Family family, const InstanceSizes& sizes, std::uint64_t seed);

// "transpose", "swap-average" or "hermiticity-broken".
AlphaCpInstance negative_fixture(const std::string& name, std::uint64_t seed = 0);

/// E = 𝒜 over itself, E₂ = M_{K·n×r}, T(x) = (I_K ⊗ x)·[V₁; …; V_K] with
/// the Kraus operators of τ, so ⟨T(x), T(y)⟩ = τ(x*y).
struct TauMapInstance {
  AlphaCpInstance base;
  ModulePtr e;
  SModule target;
  std::vector<Matrix> t_on_basis;
};

// F1 or F2 only.
TauMapInstance generate_taumap_instance(Family family, const InstanceSizes& sizes, std::uint64_t seed);

}  // namespace smod

#endif  // SMOD_INSTANCES_HPP_
