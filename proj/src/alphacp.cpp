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

#include "smod/alphacp.hpp"

#include <limits>
#include <string>

namespace smod {

Matrix OperatorCpMap::at(const Eigen::Ref<const Vector>& coords) const {
  const Index m = carrier.module()->ambient_rows();
  if (coords.size() != Index(on_basis.size())) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector does not match the domain");
  }
  Matrix out = Matrix::Zero(m, m);
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) != Complex(0)) out += coords(k) * on_basis[std::size_t(k)];
  }
  return out;
}

void OperatorCpMap::check_shapes() const {
  const Index m = carrier.module()->ambient_rows();
  if (Index(on_basis.size()) != domain.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "τ needs " + std::to_string(domain.dim()) + " basis values, got " +
                                                  std::to_string(on_basis.size()));
  }
  for (std::size_t p = 0; p < on_basis.size(); ++p) {
    if (on_basis[p].rows() != m || on_basis[p].cols() != m) {
      throw Error(ErrorKind::DimensionMismatch,
                  "τ(a_" + std::to_string(p) + ") must be " + std::to_string(m) + "x" + std::to_string(m));
    }
  }
}

Matrix twisted_gram_raw(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                        const std::optional<AlgebraElement>& a_left) {
  tau.check_shapes();
  if (!(alpha.algebra() == tau.domain)) throw Error(ErrorKind::AlgebraMismatch, "α acts on a different algebra");
  if (a_left && !(a_left->algebra() == tau.domain)) {
    throw Error(ErrorKind::AlgebraMismatch, "left multiplier lives in a different algebra");
  }
  const Index dim = tau.domain.dim();
  const Matrix& s = tau.carrier.module()->spanning_vectors();
  const Index blk = s.cols();

  std::vector<Matrix> y;
  y.reserve(std::size_t(dim));
  for (const auto& t : tau.on_basis) y.push_back(s.adjoint() * t * s);

  std::vector<AlgebraElement> right;
  std::vector<AlgebraElement> left;
  for (const auto& b : canonical_basis(tau.domain)) {
    right.push_back(a_left ? *a_left * b : b);
    left.push_back(alpha.apply(right.back()).adjoint());
  }

  Matrix g = Matrix::Zero(dim * blk, dim * blk);
  for (Index p = 0; p < dim; ++p) {
    for (Index q = 0; q < dim; ++q) {
      const Vector c = (left[std::size_t(p)] * right[std::size_t(q)]).coords();
      auto block = g.block(p * blk, q * blk, blk, blk);
      for (Index k = 0; k < dim; ++k) {
        if (c(k) != Complex(0)) block += c(k) * y[std::size_t(k)];
      }
    }
  }
  return g;
}

Matrix twisted_gram(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                    const std::optional<AlgebraElement>& a_left, const Tolerances& tol) {
  Matrix g = twisted_gram_raw(tau, alpha, a_left);
  const double skew = (g - g.adjoint()).norm();
  if (skew > tol.residual_tol * std::max(1.0, g.norm())) {
    throw Error(ErrorKind::NonHermitianKernel, "twisted Gram matrix is not Hermitian", skew);
  }
  Matrix sym = (g + g.adjoint()) * 0.5;
  return sym;
}

GramPencil::GramPencil(const Matrix& gram, double scale, const Tolerances& tol) : gram_(gram), scale_(scale) {
  const auto eig = hermitian_eig(gram, /*symmetrize=*/true, tol);
  const Index n = eig.values.size();
  if (n == 0) {
    range_.resize(0, 0);
    null_.resize(0, 0);
    return;
  }
  min_eig_ = eig.values(n - 1);
  const double threshold = std::max(tol.rank_tol * eig.values(0), kRankFloor);
  Index r = 0;
  while (r < n && eig.values(r) > threshold) ++r;
  range_ = eig.vectors.leftCols(r) * eig.values.head(r).cwiseSqrt().cwiseInverse().asDiagonal();
  null_ = eig.vectors.rightCols(n - r);
}

double GramPencil::leak(const Matrix& m) const {
  if (null_.cols() == 0) return 0;
  return spectral_norm(Matrix(gram_ * (m * null_))) / scale_;
}

double GramPencil::null_leak(const Matrix& h, int power) const {
  if (null_.cols() == 0) return 0;
  return spectral_norm(Matrix(h * null_)) / std::pow(scale_, power);
}

double GramPencil::max_ratio(const Matrix& h) const {
  if (range_.cols() == 0) return 0;
  const Matrix reduced = range_.adjoint() * h * range_;
  return hermitian_eig(reduced, /*symmetrize=*/true).values(0);
}

double certificate_scale(const OperatorCpMap& tau, const Matrix& gram) {
  const Matrix& q = tau.carrier.module()->column_space();
  const double unit = spectral_norm(Matrix(tau.at(unit_coords(tau.domain)) * q));
  if (unit > 1e-14) return unit;
  const double g = spectral_norm(gram);
  return g > 1e-14 ? g : 1.0;
}

AlphaCpCertificate verify_alpha_cp(const OperatorCpMap& tau, const StarAutomorphism& alpha, const Tolerances& tol) {
  tau.check_shapes();
  if (!(alpha.algebra() == tau.domain)) throw Error(ErrorKind::AlgebraMismatch, "α acts on a different algebra");
  AlphaCpCertificate cert;
  const ConcreteModule& e1 = *tau.carrier.module();
  const Matrix& q = e1.column_space();
  const Matrix& u = tau.carrier.unitary();
  const Index dim = tau.domain.dim();
  const auto basis = canonical_basis(tau.domain);

  for (Index p = 0; p < dim; ++p) {
    const Matrix& t = tau.on_basis[std::size_t(p)];
    const double invariance = ((tau.at(alpha.apply(basis[std::size_t(p)])) - t) * q).norm();
    const double covariance = ((u.adjoint() * t * u - t) * q).norm();
    cert.cond_i_residual = std::max({cert.cond_i_residual, invariance, covariance});
    const Matrix& ts = tau.on_basis[std::size_t(adjoint_index(tau.domain, p))];
    cert.star_residual = std::max(cert.star_residual, ((ts - t.adjoint()) * q).norm());
    const Report adj = check_adjointable(t, e1, e1, tol);
    cert.adjointable_residual =
        std::max({cert.adjointable_residual, adj.value("forward"), adj.value("backward")});
  }

  const Matrix raw = twisted_gram_raw(tau, alpha);
  cert.gram_hermiticity_residual = (raw - raw.adjoint()).norm() / std::max(1.0, raw.norm());
  const Matrix g = (raw + raw.adjoint()) * 0.5;
  cert.scale = certificate_scale(tau, g);
  const GramPencil pencil(g, cert.scale, tol);
  cert.gram_min_eig = pencil.min_eig();
  cert.gram_rank = pencil.rank();

  const Index blk = e1.spanning_vectors().cols();
  for (const auto& b : basis) {
    const Matrix ms = kron_identity(left_multiplication_matrix(b), blk);
    cert.cond_iii_nullspace_leak = std::max(cert.cond_iii_nullspace_leak, pencil.leak(ms));
    cert.domination_table.push_back(pencil.max_ratio(ms.adjoint() * g * ms));
  }

  // Y = [τ(a_p) e_q δ_t]; the proof's domination needs Y*Y ⪯ M·G.
  const Matrix& s = e1.spanning_vectors();
  Matrix y(e1.ambient_rows(), dim * blk);
  for (Index p = 0; p < dim; ++p) y.middleCols(p * blk, blk) = tau.on_basis[std::size_t(p)] * s;
  const Matrix d = y.adjoint() * y;
  if (pencil.null_leak(d, 2) <= tol.residual_tol) cert.lemma_domination_M = pencil.max_ratio(d);

  Report& r = cert.report;
  r.require_at_most("cond_i_residual", cert.cond_i_residual, tol.residual_tol);
  r.require_at_most("star_residual", cert.star_residual, tol.residual_tol);
  r.require_at_most("adjointable_residual", cert.adjointable_residual, tol.residual_tol);
  r.require_at_most("gram_hermiticity_residual", cert.gram_hermiticity_residual, tol.residual_tol);
  r.require_at_least("gram_min_eig", cert.gram_min_eig, -tol.psd_tol * cert.scale);
  r.require_at_most("cond_iii_nullspace_leak", cert.cond_iii_nullspace_leak, tol.residual_tol);
  r.note("scale", cert.scale);
  r.note("gram_rank", double(cert.gram_rank));
  r.note("lemma_domination_M",
         cert.lemma_domination_M ? *cert.lemma_domination_M : std::numeric_limits<double>::infinity());
  cert.verdict = r.pass();
  return cert;
}

std::optional<double> minimal_domination_constant(const OperatorCpMap& tau, const StarAutomorphism& alpha,
                                                  const AlgebraElement& a, const Tolerances& tol) {
  const Matrix g = twisted_gram(tau, alpha, std::nullopt, tol);
  const Matrix ga = twisted_gram(tau, alpha, a, tol);
  const GramPencil pencil(g, certificate_scale(tau, g), tol);
  if (pencil.null_leak(ga, 1) > tol.residual_tol) return std::nullopt;
  return pencil.max_ratio(ga);
}

AlgebraElement AlgebraMap::at(const Eigen::Ref<const Vector>& coords) const {
  if (coords.size() != Index(on_basis.size())) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector does not match the domain");
  }
  AlgebraElement out = AlgebraElement::zero(codomain);
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) != Complex(0)) out = out + coords(k) * on_basis[std::size_t(k)];
  }
  return out;
}

Report verify_tau_map(const Matrix& t, const AlgebraMap& tau, const ConcreteModule& e, const ConcreteModule& f,
                      const Tolerances& tol) {
  if (!(e.algebra() == tau.domain) || !(f.algebra() == tau.codomain)) {
    throw Error(ErrorKind::AlgebraMismatch, "modules do not match τ's domain and codomain");
  }
  if (t.rows() != f.dim() || t.cols() != e.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "T must be " + std::to_string(f.dim()) + "x" + std::to_string(e.dim()));
  }
  double worst = 0;
  for (Index q = 0; q < e.dim(); ++q) {
    const Matrix tq = f.realize(t.col(q));
    for (Index r = 0; r < e.dim(); ++r) {
      const Matrix ip = e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(r)];
      const Vector c = project_to_algebra(ip, e.algebra()).elem.coords();
      const Matrix lhs = tq.adjoint() * f.realize(t.col(r));
      worst = std::max(worst, (lhs - tau.at(c).embed()).norm());
    }
  }
  Report rep;
  rep.require_at_most("tau_map", worst, tol.residual_tol);
  return rep;
}

Report verify_tau_map(const std::vector<Matrix>& t_on_basis, const OperatorCpMap& tau, const ConcreteModule& e,
                      const Tolerances& tol) {
  tau.check_shapes();
  if (!(e.algebra() == tau.domain)) throw Error(ErrorKind::AlgebraMismatch, "E is not a module over τ's domain");
  if (Index(t_on_basis.size()) != e.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "T needs one operator per basis element of E");
  }
  const Index m1 = tau.carrier.module()->ambient_rows();
  for (const auto& t : t_on_basis) {
    if (t.cols() != m1 || t.rows() != t_on_basis.front().rows()) {
      throw Error(ErrorKind::DimensionMismatch, "T(e_q) must all be m₂x" + std::to_string(m1));
    }
  }
  const Matrix& q1 = tau.carrier.module()->column_space();
  double worst = 0;
  for (Index q = 0; q < e.dim(); ++q) {
    for (Index r = 0; r < e.dim(); ++r) {
      const Matrix ip = e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(r)];
      const Vector c = project_to_algebra(ip, e.algebra()).elem.coords();
      const Matrix lhs = t_on_basis[std::size_t(q)].adjoint() * t_on_basis[std::size_t(r)];
      worst = std::max(worst, ((lhs - tau.at(c)) * q1).norm());
    }
  }
  Report rep;
  rep.require_at_most("tau_map", worst, tol.residual_tol);
  return rep;
}

Matrix choi_matrix(const OperatorCpMap& tau) {
  tau.check_shapes();
  if (tau.domain.num_blocks() != 1) {
    throw Error(ErrorKind::MultiBlockUnsupported, "the Choi oracle needs a single-block domain");
  }
  const Index k = tau.domain.block_dim(0);
  const Index m = tau.carrier.module()->ambient_rows();
  Matrix c(k * m, k * m);
  for (Index r = 0; r < k; ++r)
    for (Index s = 0; s < k; ++s) c.block(r * m, s * m, m, m) = tau.on_basis[std::size_t(r * k + s)];
  return c;
}

}  // namespace smod
