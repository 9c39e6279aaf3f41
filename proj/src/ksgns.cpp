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

#include "smod/ksgns.hpp"

#include <limits>
#include <string>

namespace smod {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kCoisometryTol = 1e-10;

// Fit residuals are judged relative to the size of what is being fitted.
void require_fit(Report& r, const std::string& name, double residual, const Matrix& target, const Tolerances& tol) {
  const double limit = tol.residual_tol * std::max(1.0, target.norm());
  r.require_at_most(name, residual, limit);
  if (!(residual <= limit)) {
    throw Error(ErrorKind::IllDefinedQuotientMap, name + " does not descend to the quotient", residual);
  }
}

Matrix combine(const std::vector<Matrix>& ops, const Eigen::Ref<const Vector>& coords, Index rows, Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) != Complex(0)) out += coords(k) * ops[std::size_t(k)];
  }
  return out;
}

}  // namespace

KsgnsDilation construct_ksgns(const OperatorCpMap& tau, const StarAutomorphism& alpha, const Tolerances& tol) {
  const AlphaCpCertificate cp = verify_alpha_cp(tau, alpha, tol);
  if (!cp.verdict) {
    const std::string worst = cp.report.worst();
    throw Error(ErrorKind::NotAlphaCp, "input fails " + worst, cp.report.value(worst));
  }
  const ConcreteModule& e1 = *tau.carrier.module();
  const Index dim = tau.domain.dim();
  const Index d1 = e1.dim();
  const Index n = e1.ambient_cols();
  const Index blk = d1 * n;

  const Matrix g = twisted_gram(tau, alpha, std::nullopt, tol);
  PsdQuotient<double> quotient;
  try {
    quotient = psd_quotient(g, tol);
  } catch (const Error& err) {
    throw Error(ErrorKind::NotAlphaCp, err.what(), err.value());
  }
  const Matrix& x = quotient.coords;
  const Index h0 = quotient.rank;

  const Matrix a = alpha.action_matrix();
  const Matrix c = tau.carrier.unitary_operator().coordinate_matrix();
  const Matrix c_lift = kron_identity(c, n);

  KsgnsDilation d;
  d.h0_dim = h0;
  Report& r = d.certificate;

  auto u0 = fit_operator(x, Matrix(x * Eigen::kroneckerProduct(a, c_lift).eval()), tol);
  require_fit(r, "fit.u0", u0.residual, x, tol);
  d.u0 = std::move(u0.op);

  std::vector<Matrix> pi_prime;
  double worst_pi = 0;
  for (const auto& b : canonical_basis(tau.domain)) {
    auto fit = fit_operator(x, Matrix(x * kron_identity(left_multiplication_matrix(b), blk)), tol);
    worst_pi = std::max(worst_pi, fit.residual);
    pi_prime.push_back(std::move(fit.op));
  }
  require_fit(r, "fit.pi_prime", worst_pi, x, tol);
  for (Index s = 0; s < dim; ++s) d.pi0.push_back(combine(pi_prime, a.col(s), h0, h0));

  const Matrix unit = unit_coords(tau.domain);
  const Matrix v_target = x * Eigen::kroneckerProduct(unit, c_lift).eval();
  auto v = fit_operator(e1.spanning_vectors(), v_target, tol);
  require_fit(r, "fit.v", v.residual, v_target, tol);
  d.v = std::move(v.op);

  std::vector<Matrix> gens;
  for (Index p = 0; p < dim; ++p)
    for (Index q = 0; q < d1; ++q) gens.push_back(x.middleCols((p * d1 + q) * n, n));
  d.e0 = share(make_module(e1.algebra(), h0, gens, tol));

  r.absorb("dilation", verify_dilation(d, tau, alpha, tol));
  r.note("h0_dim", double(h0));
  r.note("closure_trivial", 1.0);
  return d;
}

Report verify_dilation(const KsgnsDilation& d, const OperatorCpMap& tau, const StarAutomorphism& alpha,
                       const Tolerances& tol) {
  tau.check_shapes();
  const ConcreteModule& e1 = *tau.carrier.module();
  const Index h0 = d.h0_dim;
  const Index m1 = e1.ambient_rows();
  const Index dim = tau.domain.dim();
  if (!d.e0 || d.e0->ambient_rows() != h0 || d.u0.rows() != h0 || d.u0.cols() != h0 || d.v.rows() != h0 ||
      d.v.cols() != m1 || Index(d.pi0.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "dilation shapes do not match the α-CP map");
  }
  for (const auto& p : d.pi0) {
    if (p.rows() != h0 || p.cols() != h0) throw Error(ErrorKind::DimensionMismatch, "π₀ operators must be h0 x h0");
  }

  const Matrix& q1 = e1.column_space();
  const Matrix& s1 = e1.spanning_vectors();
  const Matrix& u1 = tau.carrier.unitary();
  const Matrix& u0 = d.u0;
  const Matrix& v = d.v;
  const Matrix vs = v.adjoint();
  const Matrix id0 = Matrix::Identity(h0, h0);
  const Matrix a = alpha.action_matrix();
  const Matrix a_inv = alpha.inverse().action_matrix();
  const auto basis = canonical_basis(tau.domain);
  Report r;

  r.require_at_most("u0_unitarity", std::max((u0.adjoint() * u0 - id0).norm(), (u0 * u0.adjoint() - id0).norm()),
                    kUnitaryTol);
  r.require_at_most("v_natural_adjoint", (u1.adjoint() * vs * u0 - vs).norm(), kUnitaryTol);

  std::vector<Matrix> w(static_cast<std::size_t>(dim));  // Q₁*V*π₀(a_k)VQ₁
  std::vector<Matrix> pv(static_cast<std::size_t>(dim));  // π₀(a_k)VQ₁
  double recon = 0;
  for (Index k = 0; k < dim; ++k) {
    pv[std::size_t(k)] = d.pi0[std::size_t(k)] * v * q1;
    w[std::size_t(k)] = (v * q1).adjoint() * pv[std::size_t(k)];
    recon = std::max(recon, ((tau.on_basis[std::size_t(k)] - vs * pv[std::size_t(k)]) * q1).norm());
  }
  r.require_at_most("tau_reconstruction", recon, tol.residual_tol);

  double twisted = 0;
  for (Index p = 0; p < dim; ++p) {
    const AlgebraElement left = alpha.apply(basis[std::size_t(p)]).adjoint();
    for (Index q = 0; q < dim; ++q) {
      const Vector c = (left * basis[std::size_t(q)]).coords();
      const Matrix rhs = combine(w, c, q1.cols(), q1.cols());
      twisted = std::max(twisted, (pv[std::size_t(p)].adjoint() * pv[std::size_t(q)] - rhs).norm());
    }
  }
  r.require_at_most("twisted_identity", twisted, tol.residual_tol);

  try {
    const URepresentation pi{tau.domain, SModule(d.e0, u0, tol), d.pi0};
    r.absorb("representation", verify_u_representation(pi, tol));
  } catch (const Error&) {
    r.require_at_most("representation.constructible", std::numeric_limits<double>::infinity(), 0);
  }

  // Generators a_p ⊗ e_q δ_t realized as π′₀(a_p)VU₁*e_qδ_t, π′₀ = π₀ ∘ α⁻¹.
  const Matrix base = v * u1.adjoint() * s1;
  const Index blk = s1.cols();
  Matrix gens(h0, dim * blk);
  double intertwine = 0;
  double adjoint_action = 0;
  double v_star = 0;
  std::vector<Matrix> pi_prime(static_cast<std::size_t>(dim));
  for (Index p = 0; p < dim; ++p) pi_prime[std::size_t(p)] = combine(d.pi0, a_inv.col(p), h0, h0);
  for (Index p = 0; p < dim; ++p) {
    const Matrix gp = pi_prime[std::size_t(p)] * base;
    gens.middleCols(p * blk, blk) = gp;
    const Matrix forward = combine(pi_prime, a.col(p), h0, h0) * v * s1;
    intertwine = std::max(intertwine, (u0 * gp - forward).norm());
    const Matrix backward = combine(pi_prime, a_inv.col(p), h0, h0) * v * u1.adjoint() * u1.adjoint() * s1;
    adjoint_action = std::max(adjoint_action, (u0.adjoint() * gp - backward).norm());
    v_star = std::max(v_star, (vs * gp - u1.adjoint() * tau.on_basis[std::size_t(p)] * s1).norm());
  }
  r.require_at_most("u0_intertwining", intertwine, tol.residual_tol);
  r.require_at_most("u0_adjoint_action", adjoint_action, tol.residual_tol);
  r.require_at_most("v_adjoint_formula", v_star, tol.residual_tol);

  const Index rank = numerical_rank(gens, tol.rank_tol);
  r.note("minimality_rank", double(rank));
  r.require_at_most("minimality_rank_deficit", double(h0 - rank), 0.0);

  const double vnorm = spectral_norm(Matrix(v * q1));
  const double unit = spectral_norm(Matrix(tau.at(unit_coords(tau.domain)) * q1));
  r.require_at_most("v_bound_excess", vnorm * vnorm - unit, tol.residual_tol);

  const Report adj = check_adjointable(v, e1, *d.e0, tol);
  r.require_at_most("v_adjointable", std::max(adj.value("forward"), adj.value("backward")), tol.residual_tol);
  return r;
}

TauMapFactorization factorize_tau_map(const std::vector<Matrix>& t_on_basis, const ConcreteModule& e,
                                      const SModule& s2, const OperatorCpMap& tau, const StarAutomorphism& alpha,
                                      const KsgnsDilation& d, const Tolerances& tol) {
  if (!s2.unitary_is_identity(tol.residual_tol)) {
    throw Error(ErrorKind::U2NotIdentity, "the factorization needs U₂ = id on E₂");
  }
  const Report tm = verify_tau_map(t_on_basis, tau, e, tol);
  if (!tm.pass()) throw Error(ErrorKind::NotTauMap, "⟨T(x), T(y)⟩ ≠ τ(⟨x, y⟩)", tm.value("tau_map"));

  const ConcreteModule& e1 = *tau.carrier.module();
  const ConcreteModule& e2 = *s2.module();
  if (!(e1.algebra() == e2.algebra())) throw Error(ErrorKind::AlgebraMismatch, "E₁ and E₂ need the same algebra");
  const Index m2 = e2.ambient_rows();
  for (const auto& t : t_on_basis) {
    if (t.rows() != m2) throw Error(ErrorKind::DimensionMismatch, "T(e_q) must have m₂ rows");
  }
  const Index h0 = d.h0_dim;
  const Index dim = tau.domain.dim();
  const Matrix& s1 = e1.spanning_vectors();
  const Matrix& q1 = e1.column_space();
  const Index blk = s1.cols();
  const Index de = e.dim();

  TauMapFactorization out;
  Report& r = out.certificate;
  r.absorb("tau_map", tm);

  double t_adj = 0;
  Matrix cols(m2, de * blk);
  for (Index q = 0; q < de; ++q) {
    const Matrix& t = t_on_basis[std::size_t(q)];
    const Report adj = check_adjointable(t, e1, e2, tol);
    t_adj = std::max({t_adj, adj.value("forward"), adj.value("backward")});
    cols.middleCols(q * blk, blk) = t * s1;
  }
  r.require_at_most("t_adjointable", t_adj, tol.residual_tol);

  const Matrix q4 = gram_schmidt(cols, 1e-10);
  const Index r4 = q4.cols();
  out.w = q4.adjoint();
  std::vector<Matrix> gens;
  for (Index q = 0; q < de; ++q)
    for (const auto& x : e1.basis()) gens.push_back(out.w * t_on_basis[std::size_t(q)] * x);
  out.e4 = share(make_module(e1.algebra(), r4, gens, tol));

  // Ψ(e_q) on the spanning family π₀(a_p)V e_j δ_t.
  Matrix source(h0, dim * blk);
  for (Index p = 0; p < dim; ++p) source.middleCols(p * blk, blk) = d.pi0[std::size_t(p)] * d.v * s1;
  const auto basis = canonical_basis(tau.domain);
  double worst_fit = 0;
  double worst_target = 0;
  for (Index q = 0; q < de; ++q) {
    Matrix target(r4, dim * blk);
    for (Index p = 0; p < dim; ++p) {
      const Vector c = e.coordinates(e.basis()[std::size_t(q)] * basis[std::size_t(p)].embed());
      target.middleCols(p * blk, blk) = out.w * combine(t_on_basis, c, m2, e1.ambient_rows()) * s1;
    }
    auto fit = fit_operator(source, target, tol);
    worst_fit = std::max(worst_fit, fit.residual);
    worst_target = std::max(worst_target, target.norm());
    out.psi_on_basis.push_back(std::move(fit.op));
  }
  const double fit_limit = tol.residual_tol * std::max(1.0, worst_target);
  r.require_at_most("fit.psi", worst_fit, fit_limit);
  if (!(worst_fit <= fit_limit)) {
    throw Error(ErrorKind::IllDefinedQuotientMap, "Ψ does not descend to the quotient", worst_fit);
  }

  const Matrix id4 = Matrix::Identity(r4, r4);
  r.require_at_most("w_coisometry", (out.w * out.w.adjoint() - id4).norm(), kCoisometryTol);
  r.require_at_most("w_natural_adjoint", ((s2.unitary().adjoint() - Matrix::Identity(m2, m2)) * out.w.adjoint()).norm(),
                    tol.residual_tol);
  const Report wadj = check_adjointable(out.w, e2, *out.e4, tol);
  r.require_at_most("w_adjointable", std::max(wadj.value("forward"), wadj.value("backward")), tol.residual_tol);

  double factor = 0;
  double psi_adj = 0;
  for (Index q = 0; q < de; ++q) {
    const Matrix& psi = out.psi_on_basis[std::size_t(q)];
    factor = std::max(factor, ((t_on_basis[std::size_t(q)] - out.w.adjoint() * psi * d.v) * q1).norm());
    const Report adj = check_adjointable(psi, *d.e0, *out.e4, tol);
    psi_adj = std::max({psi_adj, adj.value("forward"), adj.value("backward")});
  }
  r.require_at_most("factorization", factor, tol.residual_tol);
  r.require_at_most("psi_adjointable", psi_adj, tol.residual_tol);

  double pi_map = 0;
  for (Index q = 0; q < de; ++q) {
    for (Index p = 0; p < de; ++p) {
      const Matrix ip = e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(p)];
      const Vector c = project_to_algebra(ip, e.algebra()).elem.coords();
      const Matrix lhs = out.psi_on_basis[std::size_t(q)].adjoint() * out.psi_on_basis[std::size_t(p)];
      pi_map = std::max(pi_map, (lhs - combine(d.pi0, c, h0, h0)).norm());
    }
  }
  r.require_at_most("pi_map", pi_map, tol.residual_tol);

  // The π-map law silently uses τ(α(a)*c) = τ(a*c); record how well it holds.
  double twist = 0;
  for (Index p = 0; p < dim; ++p) {
    const AlgebraElement twisted = alpha.apply(basis[std::size_t(p)]).adjoint();
    const AlgebraElement plain = basis[std::size_t(p)].adjoint();
    for (Index q = 0; q < dim; ++q) {
      const Matrix diff = tau.at(twisted * basis[std::size_t(q)]) - tau.at(plain * basis[std::size_t(q)]);
      twist = std::max(twist, (diff * q1).norm());
    }
  }
  r.note("alpha_twist_defect", twist);
  r.note("e4_rows", double(r4));
  r.note("closure_trivial", 1.0);
  return out;
}

}  // namespace smod
