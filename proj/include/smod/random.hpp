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

// Seeded draws for instance generation. std::mt19937_64 is fully specified by
// the standard, but the distributions are not, so every draw is built from
// raw engine output: one 64-bit word per real number, top 53 bits as the
// mantissa. Matrices are filled row-major, real part before imaginary part.

#ifndef SMOD_RANDOM_HPP_
#define SMOD_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "smod/numkit.hpp"

namespace smod {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  Complex complex() {
    const double re = symmetric();
    const double im = symmetric();
    return {re, im};
  }
  Index below(Index n) { return Index(uniform() * double(n)); }

  Matrix matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = complex();
    return m;
  }

  Matrix hermitian(Index n) {
    const Matrix a = matrix(n, n);
    return (a + a.adjoint()) * 0.5;
  }

  // Cayley transform (I − iH)(I + iH)⁻¹ of a random Hermitian H; exactly
  // unitary up to rounding and free of distribution-library dependence.
  Matrix unitary(Index n) {
    const Matrix h = hermitian(n);
    const Matrix id = Matrix::Identity(n, n);
    const Complex i(0, 1);
    return (id - i * h) * (id + i * h).inverse();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smod

#endif  // SMOD_RANDOM_HPP_
