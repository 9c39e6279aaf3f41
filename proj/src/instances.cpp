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

#include "smod/instances.hpp"

#include <numbers>

#include "smod/random.hpp"

namespace smod {

Family parse_family(const std::string& name) {
  if (name == "F1") return Family::F1;
  if (name == "F2") return Family::F2;
  if (name == "F3") return Family::F3;
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + name + "' (expected F1, F2 or F3)");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
  }
  return "?";
}

InstanceSizes InstanceSizes::level(int s) {
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "size level must be at least 1");
  InstanceSizes out;
  out.blocks = {std::min<Index>(s + 1, 4)};
  out.second_block = 2;
  out.carrier_rows = std::min<Index>(s + 1, 8);
  out.carrier_block = 1;
  out.kraus = std::min<Index>(s, 4);
  return out;
}

namespace {

struct Draft {
  AlphaCpInstance inst;
  Matrix kraus_stack;  // [V₁; …; V_K], K·n_A × m₁
  Index kraus = 0;
};

void check_caps(const BlockAlgebra& a, Index m1) {
  if (a.dim() > kMaxAlgebraDim) {
    throw Error(ErrorKind::SizeCapExceeded, "dim 𝒜 = " + std::to_string(a.dim()) + " exceeds " +
                                                std::to_string(kMaxAlgebraDim));
  }
  if (m1 > kMaxCarrierRows) {
    throw Error(ErrorKind::SizeCapExceeded, "m₁ = " + std::to_string(m1) + " exceeds " +
                                                std::to_string(kMaxCarrierRows));
  }
}

SModule carrier(Index m1, Index r, Matrix u = {}) {
  auto e1 = share(standard_module(BlockAlgebra::full(r), {m1}));
  if (u.size() == 0) u = Matrix::Identity(m1, m1);
  return SModule(std::move(e1), std::move(u));
}

// τ(a) = Σ_k V_k* a V_k with the stack normalized so that ‖τ(1)‖ = 1.
std::vector<Matrix> kraus_values(const BlockAlgebra& a, const Matrix& stack, Index kraus) {
  const Index n = a.ambient_dim();
  std::vector<Matrix> out;
  for (const auto& b : canonical_basis(a)) {
    const Matrix e = b.embed();
    Matrix t = Matrix::Zero(stack.cols(), stack.cols());
    for (Index k = 0; k < kraus; ++k) {
      const auto v = stack.middleRows(k * n, n);
      t += v.adjoint() * e * v;
    }
    out.push_back(std::move(t));
  }
  return out;
}

Matrix normalized_stack(Matrix stack) {
  const double s = spectral_norm(Matrix(stack.adjoint() * stack));
  if (s > 0) stack /= std::sqrt(s);
  return stack;
}

// A unitary in the commutant of the given operators: exp(iH) for a random
// Hermitian commutant element H, or a global phase when the commutant is
// trivial. Draws: one complex coefficient per commutant basis vector, then
// one phase.
Matrix commuting_unitary(const std::vector<Matrix>& ops, Index m, Rng& rng) {
  const Matrix id = Matrix::Identity(m, m);
  Matrix normal = Matrix::Zero(m * m, m * m);
  for (const auto& t : ops) {
    const Matrix a = Eigen::kroneckerProduct(id, t).eval() - Eigen::kroneckerProduct(t.transpose(), id).eval();
    normal += a.adjoint() * a;
  }
  const auto eig = hermitian_eig(normal, /*symmetrize=*/true);
  const double cut = 1e-9 * std::max(1.0, eig.values(0));
  Index first_null = m * m;
  while (first_null > 0 && eig.values(first_null - 1) <= cut) --first_null;
  const Index nulls = m * m - first_null;

  Matrix x = Matrix::Zero(m, m);
  for (Index j = first_null; j < m * m; ++j) {
    const Complex c = rng.complex();
    x += c * Eigen::Map<const Matrix>(eig.vectors.col(j).data(), m, m);
  }
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  if (nulls <= 1) return std::polar(1.0, theta) * id;

  Matrix h = (x + x.adjoint()) * 0.5;
  const double hn = spectral_norm(h);
  if (!(hn > 1e-12)) return id;
  h /= hn;
  const auto he = hermitian_eig(h, /*symmetrize=*/true);
  Vector phases(m);
  for (Index i = 0; i < m; ++i) phases(i) = std::polar(1.0, he.values(i));
  return he.vectors * phases.asDiagonal() * he.vectors.adjoint();
}

Draft draft(Family family, const InstanceSizes& sizes, std::uint64_t seed) {
  if (sizes.blocks.empty() || sizes.carrier_rows < 1 || sizes.carrier_block < 1 || sizes.kraus < 1) {
    throw Error(ErrorKind::InvalidArgument, "instance sizes must be positive");
  }
  Rng rng(seed);
  const Index m1 = sizes.carrier_rows;
  const Index r = sizes.carrier_block;
  const Index kraus = sizes.kraus;

  if (family == Family::F1) {
    const BlockAlgebra a(sizes.blocks);
    check_caps(a, m1);
    const Matrix stack = normalized_stack(rng.matrix(kraus * a.ambient_dim(), m1));
    OperatorCpMap tau{a, carrier(m1, r), kraus_values(a, stack, kraus)};
    return Draft{AlphaCpInstance{std::move(tau), StarAutomorphism::identity(a), true, "F1"}, stack, kraus};
  }

  if (family == Family::F2) {
    if (sizes.second_block < 2) throw Error(ErrorKind::InvalidArgument, "F2 needs a twisted block of size ≥ 2");
    std::vector<Index> dims = sizes.blocks;
    dims.push_back(sizes.second_block);
    const BlockAlgebra a(dims);
    check_caps(a, m1);
    const BlockAlgebra a1(sizes.blocks);
    const Index n = a.ambient_dim();
    const Index n1 = a1.ambient_dim();

    std::vector<Index> perm(dims.size());
    std::vector<Matrix> us;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      perm[i] = Index(i);
      us.push_back(Matrix::Identity(dims[i], dims[i]));
    }
    us.back() = rng.unitary(sizes.second_block);
    StarAutomorphism alpha(a, std::move(perm), std::move(us));

    // Kraus operators live on the untwisted summand only.
    Matrix stack = Matrix::Zero(kraus * n, m1);
    for (Index k = 0; k < kraus; ++k) stack.middleRows(k * n, n1) = rng.matrix(n1, m1);
    stack = normalized_stack(std::move(stack));
    auto values = kraus_values(a, stack, kraus);
    Matrix u1 = commuting_unitary(values, m1, rng);
    OperatorCpMap tau{a, carrier(m1, r, std::move(u1)), std::move(values)};
    return Draft{AlphaCpInstance{std::move(tau), std::move(alpha), true, "F2"}, stack, kraus};
  }

  static const char* kFixtures[] = {"transpose", "swap-average", "hermiticity-broken"};
  return Draft{negative_fixture(kFixtures[seed % 3], seed), Matrix(), 0};
}

}  // namespace

AlphaCpInstance generate_instance(Family family, const InstanceSizes& sizes, std::uint64_t seed) {
  return draft(family, sizes, seed).inst;
}

AlphaCpInstance negative_fixture(const std::string& name, std::uint64_t seed) {
  if (name == "transpose") {
    const BlockAlgebra a = BlockAlgebra::full(2);
    std::vector<Matrix> values;
    for (const auto& b : canonical_basis(a)) values.push_back(b.embed().transpose());
    return {OperatorCpMap{a, carrier(2, 1), std::move(values)}, StarAutomorphism::identity(a), false, name};
  }
  if (name == "swap-average") {
    const BlockAlgebra a({1, 1});
    StarAutomorphism swap(a, {1, 0}, {Matrix::Identity(1, 1), Matrix::Identity(1, 1)});
    std::vector<Matrix> values(2, Matrix::Constant(1, 1, 0.5));
    return {OperatorCpMap{a, carrier(1, 1), std::move(values)}, std::move(swap), false, name};
  }
  if (name == "hermiticity-broken") {
    // τ(a) = V*aW with V ≠ W is not *-preserving.
    Rng rng(seed);
    const BlockAlgebra a = BlockAlgebra::full(2);
    const Matrix v = normalized_stack(rng.matrix(2, 2));
    const Matrix w = normalized_stack(rng.matrix(2, 2));
    std::vector<Matrix> values;
    for (const auto& b : canonical_basis(a)) values.push_back(v.adjoint() * b.embed() * w);
    return {OperatorCpMap{a, carrier(2, 1), std::move(values)}, StarAutomorphism::identity(a), false, name};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown fixture '" + name + "'");
}

TauMapInstance generate_taumap_instance(Family family, const InstanceSizes& sizes, std::uint64_t seed) {
  if (family == Family::F3) throw Error(ErrorKind::InvalidArgument, "τ-map instances come from F1 or F2");
  Draft d = draft(family, sizes, seed);
  const BlockAlgebra& a = d.inst.tau.domain;
  const Index n = a.ambient_dim();
  const Index r = d.inst.tau.carrier.module()->algebra().ambient_dim();
  auto e = share(algebra_as_module(a));
  auto e2 = share(standard_module(BlockAlgebra::full(r), {d.kraus * n}));
  const Matrix id_k = Matrix::Identity(d.kraus, d.kraus);
  std::vector<Matrix> t;
  for (const auto& x : e->basis()) t.push_back(Eigen::kroneckerProduct(id_k, x).eval() * d.kraus_stack);
  return TauMapInstance{std::move(d.inst), std::move(e), SModule::trivial(std::move(e2)), std::move(t)};
}

}  // namespace smod
