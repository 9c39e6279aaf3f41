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

// Small hand-built instances shared by the unit tests.

#ifndef SMOD_TESTS_FIXTURES_HPP_
#define SMOD_TESTS_FIXTURES_HPP_

#include <functional>

#include "smod/alphacp.hpp"

namespace smod::fixtures {

// τ: M_k → operators on E₁ = ℂⁿ over ℂ.
inline OperatorCpMap matrix_map(Index k, Index n, const std::function<Matrix(const Matrix&)>& f) {
  const BlockAlgebra a = BlockAlgebra::full(k);
  std::vector<Matrix> values;
  for (const auto& b : canonical_basis(a)) values.push_back(f(b.embed()));
  return OperatorCpMap{a, SModule::trivial(share(standard_module(BlockAlgebra::full(1), {n}))), values};
}

// τ: M_k → left multiplications on E₁ = M_k over itself.
inline OperatorCpMap self_map(Index k, const std::function<Matrix(const Matrix&)>& f) {
  const BlockAlgebra a = BlockAlgebra::full(k);
  std::vector<Matrix> values;
  for (const auto& b : canonical_basis(a)) values.push_back(f(b.embed()));
  return OperatorCpMap{a, SModule::trivial(share(algebra_as_module(a))), values};
}

inline Matrix identity_map(const Matrix& a) { return a; }
inline Matrix transpose_map(const Matrix& a) { return a.transpose(); }
inline Matrix depolarize(const Matrix& a) { return a.trace() / double(a.rows()) * Matrix::Identity(a.rows(), a.cols()); }

}  // namespace smod::fixtures

#endif  // SMOD_TESTS_FIXTURES_HPP_
