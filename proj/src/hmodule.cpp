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

#include "smod/hmodule.hpp"

#include <string>

namespace smod {

namespace {

Eigen::Map<const Vector> vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix horizontal_stack(const std::vector<Matrix>& parts, Index rows, Index cols_each) {
  Matrix out(rows, cols_each * Index(parts.size()));
  for (std::size_t k = 0; k < parts.size(); ++k) out.middleCols(Index(k) * cols_each, cols_each) = parts[k];
  return out;
}

}  // namespace

ConcreteModule::ConcreteModule(BlockAlgebra algebra, Index ambient_rows, std::vector<Matrix> basis,
                               const Tolerances& tol)
    : algebra_(std::move(algebra)), rows_(ambient_rows), basis_(std::move(basis)) {
  const Index n = algebra_.ambient_dim();
  if (rows_ < 0) throw Error(ErrorKind::DimensionMismatch, "ambient_rows must be non-negative");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (basis_[k].rows() != rows_ || basis_[k].cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "basis element " + std::to_string(k) + " must be " +
                                                    std::to_string(rows_) + "x" + std::to_string(n));
    }
  }
  const Index d = dim();
  vectorized_.resize(rows_ * n, d);
  for (Index k = 0; k < d; ++k) vectorized_.col(k) = vec(basis_[std::size_t(k)]);
  spanning_ = horizontal_stack(basis_, rows_, n);
  column_space_ = gram_schmidt(spanning_, 1e-10);

  const double ortho = (vectorized_.adjoint() * vectorized_ - Matrix::Identity(d, d)).norm();
  if (ortho > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "module basis is not trace-orthonormal", ortho);
  }
  const auto alg_basis = canonical_basis(algebra_);
  for (Index k = 0; k < d; ++k) {
    for (const auto& b : alg_basis) {
      const double miss = distance_to_span(basis_[std::size_t(k)] * b.embed());
      if (miss > tol.residual_tol) {
        throw Error(ErrorKind::InvalidArgument, "module is not closed under the right algebra action", miss);
      }
    }
  }
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      const Matrix g = basis_[std::size_t(i)].adjoint() * basis_[std::size_t(j)];
      const double mass = project_to_algebra(g, algebra_).off_block_mass;
      if (mass > tol.residual_tol) {
        throw Error(ErrorKind::InnerProductEscapesAlgebra,
                    "⟨x" + std::to_string(i) + ", x" + std::to_string(j) + "⟩ has off-block mass " +
                        std::to_string(mass),
                    mass);
      }
    }
  }
}

ConcreteModule ConcreteModule::zero(const BlockAlgebra& algebra, Index ambient_rows) {
  return ConcreteModule(algebra, ambient_rows, {});
}

Matrix ConcreteModule::realize(const Eigen::Ref<const Vector>& coords) const {
  if (coords.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "coordinate vector has the wrong length");
  Matrix x = Matrix::Zero(rows_, ambient_cols());
  for (Index k = 0; k < dim(); ++k) x += coords(k) * basis_[std::size_t(k)];
  return x;
}

Vector ConcreteModule::coordinates(const Eigen::Ref<const Matrix>& x) const {
  if (x.rows() != rows_ || x.cols() != ambient_cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix does not live in the module's ambient space");
  }
  const Matrix xc = x;
  return vectorized_.adjoint() * vec(xc);
}

double ConcreteModule::distance_to_span(const Eigen::Ref<const Matrix>& x) const {
  const Matrix xc = x;
  const Vector v = vec(xc);
  return (v - vectorized_ * (vectorized_.adjoint() * v)).norm();
}

ConcreteModule make_module(const BlockAlgebra& algebra, Index ambient_rows, const std::vector<Matrix>& generators,
                           const Tolerances& tol) {
  const Index n = algebra.ambient_dim();
  const auto alg_basis = canonical_basis(algebra);
  std::vector<Matrix> embedded;
  for (const auto& b : alg_basis) embedded.push_back(b.embed());

  Matrix candidates(ambient_rows * n, Index(generators.size() * embedded.size()));
  Index c = 0;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].rows() != ambient_rows || generators[g].cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "generator " + std::to_string(g) + " must be " +
                                                    std::to_string(ambient_rows) + "x" + std::to_string(n));
    }
    for (const auto& b : embedded) {
      const Matrix xb = generators[g] * b;
      candidates.col(c++) = vec(xb);
    }
  }
  const Matrix ortho = gram_schmidt(candidates, tol.rank_tol);
  std::vector<Matrix> basis;
  for (Index k = 0; k < ortho.cols(); ++k) {
    basis.push_back(Eigen::Map<const Matrix>(ortho.col(k).data(), ambient_rows, n));
  }
  return ConcreteModule(algebra, ambient_rows, std::move(basis), tol);
}

ConcreteModule standard_module(const BlockAlgebra& algebra, const std::vector<Index>& row_multiplicity) {
  if (Index(row_multiplicity.size()) != algebra.num_blocks()) {
    throw Error(ErrorKind::DimensionMismatch, "need one row multiplicity per block");
  }
  Index rows = 0;
  for (Index r : row_multiplicity) rows += r;
  std::vector<Matrix> basis;
  Index row_off = 0;
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    const Index mi = row_multiplicity[std::size_t(i)];
    for (Index r = 0; r < mi; ++r)
      for (Index s = 0; s < algebra.block_dim(i); ++s) {
        Matrix e = Matrix::Zero(rows, algebra.ambient_dim());
        e(row_off + r, algebra.block_offset(i) + s) = 1.0;
        basis.push_back(std::move(e));
      }
    row_off += mi;
  }
  return ConcreteModule(algebra, rows, std::move(basis));
}

ConcreteModule algebra_as_module(const BlockAlgebra& algebra) { return standard_module(algebra, algebra.block_dims()); }

AlgebraElement inner_product(const ConcreteModule& e, const Eigen::Ref<const Vector>& x,
                             const Eigen::Ref<const Vector>& y, const Tolerances& tol) {
  const Matrix g = e.realize(x).adjoint() * e.realize(y);
  auto proj = project_to_algebra(g, e.algebra());
  if (proj.off_block_mass > tol.residual_tol) {
    throw Error(ErrorKind::InnerProductEscapesAlgebra,
                "inner product has off-block mass " + std::to_string(proj.off_block_mass), proj.off_block_mass);
  }
  return std::move(proj.elem);
}

double module_norm(const ConcreteModule& e, const Eigen::Ref<const Vector>& x) {
  const Matrix xr = e.realize(x);
  return std::sqrt(spectral_norm(Matrix(xr.adjoint() * xr)));
}

ModuleOperator::ModuleOperator(ModulePtr source, ModulePtr target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!source_ || !target_) throw Error(ErrorKind::InvalidArgument, "operator needs a source and a target module");
  if (matrix_.rows() != target_->ambient_rows() || matrix_.cols() != source_->ambient_rows()) {
    throw Error(ErrorKind::DimensionMismatch, "operator matrix must be " + std::to_string(target_->ambient_rows()) +
                                                  "x" + std::to_string(source_->ambient_rows()));
  }
  if (!(source_->algebra() == target_->algebra())) {
    throw Error(ErrorKind::AlgebraMismatch, "source and target modules are over different algebras");
  }
}

Matrix ModuleOperator::coordinate_matrix() const {
  Matrix c(target_->dim(), source_->dim());
  for (Index k = 0; k < source_->dim(); ++k) c.col(k) = target_->coordinates(matrix_ * source_->basis()[std::size_t(k)]);
  return c;
}

Vector ModuleOperator::apply(const Eigen::Ref<const Vector>& coords) const {
  return target_->coordinates(matrix_ * source_->realize(coords));
}

Report check_adjointable(const Eigen::Ref<const Matrix>& t, const ConcreteModule& e, const ConcreteModule& f,
                         const Tolerances& tol) {
  if (t.rows() != f.ambient_rows() || t.cols() != e.ambient_rows()) {
    throw Error(ErrorKind::DimensionMismatch, "operator shape does not match the modules");
  }
  double forward = 0, backward = 0;
  Index fw = -1, bw = -1;
  for (Index k = 0; k < e.dim(); ++k) {
    const double miss = f.distance_to_span(t * e.basis()[std::size_t(k)]);
    if (miss > forward) forward = miss, fw = k;
  }
  const Matrix ta = t.adjoint();
  for (Index k = 0; k < f.dim(); ++k) {
    const double miss = e.distance_to_span(ta * f.basis()[std::size_t(k)]);
    if (miss > backward) backward = miss, bw = k;
  }
  Report r;
  r.require_at_most("forward", forward, tol.residual_tol);
  r.require_at_most("backward", backward, tol.residual_tol);
  r.note("forward_witness", double(fw));
  r.note("backward_witness", double(bw));
  return r;
}

double unitarity_defect(const Eigen::Ref<const Matrix>& u, const ConcreteModule& e) {
  const Matrix& q = e.column_space();
  const Index r = q.cols();
  if (r == 0) return 0;
  const Matrix uq = u * q;
  const Matrix uaq = u.adjoint() * q;
  return std::max((uq.adjoint() * uq - Matrix::Identity(r, r)).norm(),
                  (uaq.adjoint() * uaq - Matrix::Identity(r, r)).norm());
}

SModule::SModule(ModulePtr module, Matrix unitary, const Tolerances& tol)
    : module_(std::move(module)), unitary_(std::move(unitary)) {
  if (!module_) throw Error(ErrorKind::InvalidArgument, "S-module needs a module");
  const Index m = module_->ambient_rows();
  if (unitary_.rows() != m || unitary_.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch, "unitary must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  const double defect = unitarity_defect(unitary_, *module_);
  if (defect > 1e-10) throw Error(ErrorKind::InvalidArgument, "U is not unitary on the module", defect);
  const Report adj = check_adjointable(unitary_, *module_, *module_, tol);
  if (!adj.pass()) throw Error(ErrorKind::NotAdjointable, "U does not map the module to itself", adj.value("forward"));
  const Matrix& q = module_->column_space();
  krein_ = ((unitary_ - unitary_.adjoint()) * q).norm() <= tol.residual_tol;
}

SModule SModule::trivial(ModulePtr module) {
  const Index m = module->ambient_rows();
  return SModule(std::move(module), Matrix::Identity(m, m));
}

bool SModule::unitary_is_identity(double tol) const {
  const Matrix& q = module_->column_space();
  return ((unitary_ - Matrix::Identity(unitary_.rows(), unitary_.cols())) * q).norm() <= tol;
}

NaturalAdjoint natural_adjoint(const ModuleOperator& t, const SModule& s1, const SModule& s2, const Tolerances& tol) {
  const ConcreteModule& e1 = *s1.module();
  const ConcreteModule& e2 = *s2.module();
  if (t.matrix().rows() != e2.ambient_rows() || t.matrix().cols() != e1.ambient_rows()) {
    throw Error(ErrorKind::DimensionMismatch, "T does not map between the two S-modules");
  }
  const Report adj = check_adjointable(t.matrix(), e1, e2, tol);
  if (!adj.pass()) {
    throw Error(ErrorKind::NotAdjointable, "T is not adjointable between the S-modules",
                std::max(adj.value("forward"), adj.value("backward")));
  }
  Matrix sharp = s1.unitary().adjoint() * t.matrix().adjoint() * s2.unitary();
  const Matrix& x = e1.spanning_vectors();
  const Matrix& y = e2.spanning_vectors();
  const Matrix lhs = (t.matrix() * x).adjoint() * (s2.unitary() * y);
  const Matrix rhs = x.adjoint() * (s1.unitary() * sharp * y);
  const double residual = max_block_frobenius(lhs - rhs, e1.ambient_cols());
  return NaturalAdjoint{ModuleOperator(s2.module(), s1.module(), std::move(sharp)), residual};
}

AlgebraElement sesquilinear_form(const SModule& s, const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y,
                                 const Tolerances& tol) {
  const ConcreteModule& e = *s.module();
  const Matrix g = e.realize(x).adjoint() * (s.unitary() * e.realize(y));
  auto proj = project_to_algebra(g, e.algebra());
  if (proj.off_block_mass > tol.residual_tol) {
    throw Error(ErrorKind::InnerProductEscapesAlgebra,
                "form value has off-block mass " + std::to_string(proj.off_block_mass), proj.off_block_mass);
  }
  return std::move(proj.elem);
}

Matrix URepresentation::at(const Eigen::Ref<const Vector>& coords) const {
  const Index m = smodule.module()->ambient_rows();
  Matrix out = Matrix::Zero(m, m);
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) != Complex(0)) out += coords(k) * on_basis[std::size_t(k)];
  }
  return out;
}

Report verify_u_representation(const URepresentation& pi, const Tolerances& tol) {
  const BlockAlgebra& alg = pi.algebra;
  const Index dim = alg.dim();
  const ConcreteModule& e = *pi.smodule.module();
  if (Index(pi.on_basis.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "representation must give one operator per basis element");
  }
  const Matrix& q = e.column_space();
  const Matrix& u = pi.smodule.unitary();
  const Index m = e.ambient_rows();

  const auto table = basis_product_table(alg);
  double multiplicative = 0;
  std::vector<Matrix> piq(static_cast<std::size_t>(dim));
  for (Index p = 0; p < dim; ++p) piq[std::size_t(p)] = pi.on_basis[std::size_t(p)] * q;
  for (Index p = 0; p < dim; ++p) {
    for (Index r = 0; r < dim; ++r) {
      const Index t = table[std::size_t(p * dim + r)];
      Matrix diff = -pi.on_basis[std::size_t(p)] * piq[std::size_t(r)];
      if (t >= 0) diff += piq[std::size_t(t)];
      multiplicative = std::max(multiplicative, diff.norm());
    }
  }
  const double unital = ((pi.at(unit_coords(alg)) - Matrix::Identity(m, m)) * q).norm();

  double symmetry = 0;
  double bracket = 0;
  const Matrix& s = e.spanning_vectors();
  const Matrix us = u * s;
  for (Index p = 0; p < dim; ++p) {
    const Matrix& a = pi.on_basis[std::size_t(p)];
    const Matrix& astar = pi.on_basis[std::size_t(adjoint_index(alg, p))];
    symmetry = std::max(symmetry, ((astar - u.adjoint() * a.adjoint() * u) * q).norm());
    const Matrix lhs = (a * s).adjoint() * us;
    const Matrix rhs = s.adjoint() * (u * (astar * s));
    bracket = std::max(bracket, max_block_frobenius(lhs - rhs, e.ambient_cols()));
  }

  Report r;
  r.require_at_most("multiplicative", multiplicative, tol.residual_tol);
  r.require_at_most("unital", unital, tol.residual_tol);
  r.require_at_most("natural_symmetry", symmetry, tol.residual_tol);
  r.require_at_most("bracket", bracket, tol.residual_tol);
  return r;
}

}  // namespace smod
