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

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smod/instances.hpp"
#include "smod/ksgns.hpp"
#include "smod/random.hpp"

namespace smod {
namespace {

using fixtures::matrix_map;
using fixtures::self_map;

double max_checked(const Report& r) {
  double worst = 0;
  for (const auto& [name, c] : r.checks()) {
    if (c.upper && name.find("minimality") == std::string::npos) worst = std::max(worst, c.value);
  }
  return worst;
}

TEST(ConstructKsgns, IdentityOnM2CollapsesToC2) {
  const OperatorCpMap tau = self_map(2, fixtures::identity_map);
  const auto alpha = StarAutomorphism::identity(tau.domain);
  const KsgnsDilation d = construct_ksgns(tau, alpha);
  EXPECT_EQ(d.h0_dim, 2);
  EXPECT_TRUE(d.certificate.pass()) << d.certificate.worst();
  EXPECT_LE(max_checked(d.certificate), 1e-10);
  // π₀ is the defining representation up to the unitary V fixes.
  const Matrix& q1 = tau.carrier.module()->column_space();
  const auto basis = canonical_basis(tau.domain);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    EXPECT_LE((d.v.adjoint() * d.pi0[p] * d.v * q1 - basis[p].embed() * q1).norm(), 1e-12);
  }
  EXPECT_LE((d.v.adjoint() * d.v - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(ConstructKsgns, DepolarizingHasFullStinespringSpace) {
  const OperatorCpMap tau = matrix_map(2, 2, fixtures::depolarize);
  const KsgnsDilation d = construct_ksgns(tau, StarAutomorphism::identity(tau.domain));
  const Matrix choi = oracle::choi(fixtures::depolarize, 2, 2);
  EXPECT_EQ(d.h0_dim, 2 * oracle::rank(choi));
  EXPECT_EQ(d.h0_dim, 8);
  EXPECT_TRUE(d.certificate.pass());
}

TEST(ConstructKsgns, ZeroMapIsVacuous) {
  const OperatorCpMap tau = matrix_map(2, 2, [](const Matrix&) { return Matrix(Matrix::Zero(2, 2)); });
  const auto alpha = StarAutomorphism::identity(tau.domain);
  const KsgnsDilation d = construct_ksgns(tau, alpha);
  EXPECT_EQ(d.h0_dim, 0);
  EXPECT_TRUE(d.certificate.pass()) << d.certificate.worst();
  EXPECT_TRUE(verify_dilation(d, tau, alpha).pass());
}

TEST(ConstructKsgns, RejectsTranspose) {
  const OperatorCpMap tau = matrix_map(2, 2, fixtures::transpose_map);
  try {
    construct_ksgns(tau, StarAutomorphism::identity(tau.domain));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotAlphaCp);
  }
}

TEST(ConstructKsgns, GramMatchesStinespringOracle) {
  Rng rng(31);
  for (Index k = 1; k <= 3; ++k) {
    const Index n = 2;
    std::vector<Matrix> kraus{rng.matrix(k, n), rng.matrix(k, n)};
    auto tau_fn = [&](const Matrix& a) {
      Matrix out = Matrix::Zero(n, n);
      for (const auto& v : kraus) out += v.adjoint() * a * v;
      return out;
    };
    const OperatorCpMap tau = matrix_map(k, n, tau_fn);
    const KsgnsDilation d = construct_ksgns(tau, StarAutomorphism::identity(tau.domain));
    const Matrix choi = oracle::choi(tau_fn, k, n);
    const auto oracle_kraus = oracle::kraus_from_choi(choi, k, n);
    EXPECT_EQ(d.h0_dim, k * Index(oracle_kraus.size()));
    const Matrix w = oracle::stinespring_vectors(oracle_kraus, k, n);
    const Matrix g = twisted_gram(tau, StarAutomorphism::identity(tau.domain));
    EXPECT_LE((w.adjoint() * w - g).norm(), 1e-10 * std::max(1.0, g.norm()));
  }
}

TEST(VerifyDilation, RoundTripAndPerturbation) {
  InstanceSizes sizes;
  sizes.blocks = {2, 1};
  sizes.carrier_rows = 3;
  for (Family fam : {Family::F1, Family::F2}) {
    const auto inst = generate_instance(fam, sizes, 3);
    KsgnsDilation d = construct_ksgns(inst.tau, inst.alpha);
    EXPECT_TRUE(d.certificate.pass()) << d.certificate.worst();
    EXPECT_TRUE(verify_dilation(d, inst.tau, inst.alpha).pass());
    d.v(0, 0) += 1e-4;
    const Report bad = verify_dilation(d, inst.tau, inst.alpha);
    EXPECT_FALSE(bad.pass());
    EXPECT_GT(bad.value("tau_reconstruction"), 1e-6);
    EXPECT_LT(bad.value("tau_reconstruction"), 1e-2);
  }
}

TEST(FactorizeTauMap, IdentityOnM2) {
  const OperatorCpMap tau = self_map(2, fixtures::identity_map);
  const auto alpha = StarAutomorphism::identity(tau.domain);
  const KsgnsDilation d = construct_ksgns(tau, alpha);
  auto e = share(algebra_as_module(tau.domain));
  std::vector<Matrix> t;
  for (const auto& x : e->basis()) t.push_back(x);
  const TauMapFactorization f = factorize_tau_map(t, *e, tau.carrier, tau, alpha, d);
  EXPECT_TRUE(f.certificate.pass()) << f.certificate.worst();
  EXPECT_LE(f.certificate.value("factorization"), 1e-10);
  EXPECT_LE(f.certificate.value("w_coisometry"), 1e-10);
  EXPECT_EQ(f.w.rows(), 2);
}

TEST(FactorizeTauMap, ZeroMapGivesZeroModule) {
  const OperatorCpMap tau = self_map(2, [](const Matrix&) { return Matrix(Matrix::Zero(2, 2)); });
  const auto alpha = StarAutomorphism::identity(tau.domain);
  const KsgnsDilation d = construct_ksgns(tau, alpha);
  auto e = share(algebra_as_module(tau.domain));
  const std::vector<Matrix> t(4, Matrix::Zero(2, 2));
  const TauMapFactorization f = factorize_tau_map(t, *e, tau.carrier, tau, alpha, d);
  EXPECT_EQ(f.e4->dim(), 0);
  EXPECT_EQ(f.w.rows(), 0);
  EXPECT_TRUE(f.certificate.pass()) << f.certificate.worst();
}

TEST(FactorizeTauMap, GeneratedInstances) {
  InstanceSizes sizes;
  sizes.blocks = {2};
  sizes.carrier_rows = 2;
  sizes.carrier_block = 2;
  for (Family fam : {Family::F1, Family::F2}) {
    const auto inst = generate_taumap_instance(fam, sizes, 8);
    const KsgnsDilation d = construct_ksgns(inst.base.tau, inst.base.alpha);
    const auto f = factorize_tau_map(inst.t_on_basis, *inst.e, inst.target, inst.base.tau, inst.base.alpha, d);
    EXPECT_TRUE(f.certificate.pass()) << f.certificate.worst();
    EXPECT_LE(f.certificate.value("alpha_twist_defect"), 1e-10);
  }
}

TEST(FactorizeTauMap, GuardsPreconditions) {
  const auto inst = generate_taumap_instance(Family::F1, InstanceSizes{}, 2);
  const KsgnsDilation d = construct_ksgns(inst.base.tau, inst.base.alpha);
  std::vector<Matrix> doubled;
  for (const auto& t : inst.t_on_basis) doubled.push_back(2.0 * t);
  try {
    factorize_tau_map(doubled, *inst.e, inst.target, inst.base.tau, inst.base.alpha, d);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotTauMap);
  }
  const Index m2 = inst.target.module()->ambient_rows();
  Matrix flip = Matrix::Identity(m2, m2);
  flip(0, 0) = -1;
  const SModule twisted(inst.target.module(), flip);
  try {
    factorize_tau_map(inst.t_on_basis, *inst.e, twisted, inst.base.tau, inst.base.alpha, d);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::U2NotIdentity);
  }
}

}  // namespace
}  // namespace smod
