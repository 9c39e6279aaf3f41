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

#include "smod/algebra.hpp"

#include <algorithm>
#include <string>

namespace smod {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::InnerProductEscapesAlgebra: return "InnerProductEscapesAlgebra";
    case ErrorKind::NotAdjointable: return "NotAdjointable";
    case ErrorKind::NonHermitianKernel: return "NonHermitianKernel";
    case ErrorKind::MultiBlockUnsupported: return "MultiBlockUnsupported";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotAlphaCp: return "NotAlphaCp";
    case ErrorKind::NotAlphaCpd: return "NotAlphaCpd";
    case ErrorKind::NotTauMap: return "NotTauMap";
    case ErrorKind::U2NotIdentity: return "U2NotIdentity";
    case ErrorKind::AlphaNotIdentity: return "AlphaNotIdentity";
    case ErrorKind::IllDefinedQuotientMap: return "IllDefinedQuotientMap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

BlockAlgebra::BlockAlgebra(std::vector<Index> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "an algebra needs at least one block");
  for (Index d : dims_) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "block dimensions must be positive");
    row_offsets_.push_back(ambient_);
    coord_offsets_.push_back(dim_);
    ambient_ += d;
    dim_ += d * d;
  }
}

AlgebraElement::AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (Index(blocks_.size()) != algebra_.num_blocks()) {
    throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(blocks_.size()) + " blocks, algebra has " +
                                                  std::to_string(algebra_.num_blocks()));
  }
  for (Index i = 0; i < algebra_.num_blocks(); ++i) {
    const Index n = algebra_.block_dim(i);
    if (block(i).rows() != n || block(i).cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "block " + std::to_string(i) + " has the wrong shape");
    }
  }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index d : algebra.block_dims()) blocks.push_back(Matrix::Zero(d, d));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index d : algebra.block_dims()) blocks.push_back(Matrix::Identity(d, d));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::from_coords(const BlockAlgebra& algebra, const Eigen::Ref<const Vector>& coords) {
  if (coords.size() != algebra.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector has length " + std::to_string(coords.size()) +
                                                  ", algebra dimension is " + std::to_string(algebra.dim()));
  }
  std::vector<Matrix> blocks;
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    const Index n = algebra.block_dim(i);
    Matrix b(n, n);
    const Index off = algebra.coord_offset(i);
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s) b(r, s) = coords(off + r * n + s);
    blocks.push_back(std::move(b));
  }
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::from_ambient(const BlockAlgebra& algebra, const Eigen::Ref<const Matrix>& m) {
  const Index n = algebra.ambient_dim();
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "ambient matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  std::vector<Matrix> blocks;
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    const Index off = algebra.block_offset(i);
    const Index d = algebra.block_dim(i);
    blocks.push_back(m.block(off, off, d, d));
  }
  return AlgebraElement(algebra, std::move(blocks));
}

Vector AlgebraElement::coords() const {
  Vector v(algebra_.dim());
  for (Index i = 0; i < algebra_.num_blocks(); ++i) {
    const Index n = algebra_.block_dim(i);
    const Index off = algebra_.coord_offset(i);
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s) v(off + r * n + s) = block(i)(r, s);
  }
  return v;
}

Matrix AlgebraElement::embed() const {
  const Index n = algebra_.ambient_dim();
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < algebra_.num_blocks(); ++i) {
    const Index off = algebra_.block_offset(i);
    const Index d = algebra_.block_dim(i);
    m.block(off, off, d, d) = block(i);
  }
  return m;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> blocks;
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return AlgebraElement(algebra_, std::move(blocks));
}

double AlgebraElement::norm() const {
  double n = 0;
  for (const auto& b : blocks_) n = std::max(n, spectral_norm(b));
  return n;
}

double AlgebraElement::frobenius() const {
  double s = 0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

namespace {

void require_same(const BlockAlgebra& a, const BlockAlgebra& b) {
  if (!(a == b)) throw Error(ErrorKind::AlgebraMismatch, "elements belong to different algebras");
}

}  // namespace

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.algebra(), b.algebra());
  std::vector<Matrix> blocks;
  for (Index i = 0; i < a.algebra().num_blocks(); ++i) blocks.push_back(a.block(i) * b.block(i));
  return AlgebraElement(a.algebra(), std::move(blocks));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.algebra(), b.algebra());
  std::vector<Matrix> blocks;
  for (Index i = 0; i < a.algebra().num_blocks(); ++i) blocks.push_back(a.block(i) + b.block(i));
  return AlgebraElement(a.algebra(), std::move(blocks));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.algebra(), b.algebra());
  std::vector<Matrix> blocks;
  for (Index i = 0; i < a.algebra().num_blocks(); ++i) blocks.push_back(a.block(i) - b.block(i));
  return AlgebraElement(a.algebra(), std::move(blocks));
}

AlgebraElement operator*(Complex z, const AlgebraElement& a) {
  std::vector<Matrix> blocks;
  for (const auto& b : a.blocks()) blocks.push_back(z * b);
  return AlgebraElement(a.algebra(), std::move(blocks));
}

std::vector<AlgebraElement> canonical_basis(const BlockAlgebra& algebra) {
  std::vector<AlgebraElement> basis;
  basis.reserve(std::size_t(algebra.dim()));
  for (Index k = 0; k < algebra.dim(); ++k) {
    basis.push_back(AlgebraElement::from_coords(algebra, Vector::Unit(algebra.dim(), k)));
  }
  return basis;
}

Vector unit_coords(const BlockAlgebra& algebra) { return AlgebraElement::identity(algebra).coords(); }

Index adjoint_index(const BlockAlgebra& algebra, Index p) {
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    const Index off = algebra.coord_offset(i);
    const Index n = algebra.block_dim(i);
    if (p < off + n * n) {
      const Index r = (p - off) / n;
      const Index s = (p - off) % n;
      return off + s * n + r;
    }
  }
  throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
}

Matrix left_multiplication_matrix(const AlgebraElement& a) {
  const BlockAlgebra& alg = a.algebra();
  Matrix l = Matrix::Zero(alg.dim(), alg.dim());
  for (Index i = 0; i < alg.num_blocks(); ++i) {
    const Index n = alg.block_dim(i);
    const Index off = alg.coord_offset(i);
    // a_i · E_rs = Σ_r' a_i(r', r) E_r's
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s)
        for (Index rp = 0; rp < n; ++rp) l(off + rp * n + s, off + r * n + s) = a.block(i)(rp, r);
  }
  return l;
}

std::vector<Index> basis_product_table(const BlockAlgebra& algebra) {
  const Index dim = algebra.dim();
  std::vector<Index> table(std::size_t(dim * dim), -1);
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    const Index n = algebra.block_dim(i);
    const Index off = algebra.coord_offset(i);
    // E_rs E_tu = δ_st E_ru
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s)
        for (Index u = 0; u < n; ++u) {
          const Index p = off + r * n + s;
          const Index q = off + s * n + u;
          table[std::size_t(p * dim + q)] = off + r * n + u;
        }
  }
  return table;
}

StarAutomorphism::StarAutomorphism(BlockAlgebra algebra, std::vector<Index> perm, std::vector<Matrix> unitaries)
    : algebra_(std::move(algebra)), perm_(std::move(perm)), unitaries_(std::move(unitaries)) {
  const Index k = algebra_.num_blocks();
  if (Index(perm_.size()) != k || Index(unitaries_.size()) != k) {
    throw Error(ErrorKind::DimensionMismatch, "automorphism needs one permutation entry and one unitary per block");
  }
  std::vector<bool> hit(std::size_t(k), false);
  for (Index i = 0; i < k; ++i) {
    const Index j = perm_[std::size_t(i)];
    if (j < 0 || j >= k || hit[std::size_t(j)]) {
      throw Error(ErrorKind::InvalidArgument, "block map is not a permutation");
    }
    hit[std::size_t(j)] = true;
    if (algebra_.block_dim(i) != algebra_.block_dim(j)) {
      throw Error(ErrorKind::InvalidArgument, "block map must preserve block dimension");
    }
  }
  for (Index j = 0; j < k; ++j) {
    const Matrix& u = unitaries_[std::size_t(j)];
    const Index n = algebra_.block_dim(j);
    if (u.rows() != n || u.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "unitary " + std::to_string(j) + " has the wrong shape");
    }
    const double drift = (u.adjoint() * u - Matrix::Identity(n, n)).norm();
    if (drift > 1e-12 * double(std::max<Index>(1, n))) {
      throw Error(ErrorKind::InvalidArgument, "unitary " + std::to_string(j) + " is not unitary", drift);
    }
  }
}

StarAutomorphism StarAutomorphism::identity(const BlockAlgebra& algebra) {
  std::vector<Index> perm;
  std::vector<Matrix> us;
  for (Index i = 0; i < algebra.num_blocks(); ++i) {
    perm.push_back(i);
    us.push_back(Matrix::Identity(algebra.block_dim(i), algebra.block_dim(i)));
  }
  return StarAutomorphism(algebra, std::move(perm), std::move(us));
}

AlgebraElement StarAutomorphism::apply(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra_)) throw Error(ErrorKind::AlgebraMismatch, "element is not in the automorphism's algebra");
  std::vector<Matrix> blocks(a.blocks().size());
  for (Index i = 0; i < algebra_.num_blocks(); ++i) {
    const Index j = perm_[std::size_t(i)];
    const Matrix& u = unitaries_[std::size_t(j)];
    blocks[std::size_t(j)] = u * a.block(i) * u.adjoint();
  }
  return AlgebraElement(algebra_, std::move(blocks));
}

StarAutomorphism StarAutomorphism::inverse() const {
  // α⁻¹(b)_i = u_{p(i)}* b_{p(i)} u_{p(i)}, i.e. perm' = p⁻¹ and u'_i = u_{p(i)}*.
  const Index k = algebra_.num_blocks();
  std::vector<Index> inv(static_cast<std::size_t>(k));
  std::vector<Matrix> us(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Index j = perm_[std::size_t(i)];
    inv[std::size_t(j)] = i;
    us[std::size_t(i)] = unitaries_[std::size_t(j)].adjoint();
  }
  return StarAutomorphism(algebra_, std::move(inv), std::move(us));
}

Matrix StarAutomorphism::action_matrix() const {
  Matrix m(algebra_.dim(), algebra_.dim());
  const auto basis = canonical_basis(algebra_);
  for (Index k = 0; k < algebra_.dim(); ++k) m.col(k) = apply(basis[std::size_t(k)]).coords();
  return m;
}

bool StarAutomorphism::is_identity(double tol) const {
  const Index d = algebra_.dim();
  return (action_matrix() - Matrix::Identity(d, d)).norm() <= tol;
}

AlgebraElement apply_automorphism(const StarAutomorphism& alpha, const AlgebraElement& a) { return alpha.apply(a); }

Report verify_action(const BlockAlgebra& algebra, const Matrix& action, const Tolerances& tol) {
  const Index d = algebra.dim();
  if (action.rows() != d || action.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "action matrix must be dim × dim");
  }
  auto image = [&](const Vector& c) { return AlgebraElement::from_coords(algebra, action * c); };
  const auto basis = canonical_basis(algebra);
  const AlgebraElement one = AlgebraElement::identity(algebra);

  const double unital = (image(one.coords()) - one).frobenius();
  double multiplicative = 0;
  double star = 0;
  std::vector<AlgebraElement> images;
  for (const auto& b : basis) images.push_back(image(b.coords()));
  for (Index p = 0; p < d; ++p) {
    const auto& ap = basis[std::size_t(p)];
    star = std::max(star, (image(ap.adjoint().coords()) - images[std::size_t(p)].adjoint()).frobenius());
    for (Index q = 0; q < d; ++q) {
      const auto& aq = basis[std::size_t(q)];
      const AlgebraElement lhs = image((ap * aq).coords());
      const AlgebraElement rhs = images[std::size_t(p)] * images[std::size_t(q)];
      multiplicative = std::max(multiplicative, (lhs - rhs).frobenius());
    }
  }
  const double deficiency = double(d - numerical_rank(action, 1e-10));

  Report r;
  r.require_at_most("unital", unital, tol.residual_tol);
  r.require_at_most("multiplicative", multiplicative, tol.residual_tol);
  r.require_at_most("star", star, tol.residual_tol);
  r.require_at_most("bijective", deficiency, tol.residual_tol);
  return r;
}

Report verify_automorphism(const StarAutomorphism& alpha, const Tolerances& tol) {
  return verify_action(alpha.algebra(), alpha.action_matrix(), tol);
}

AlgebraProjection project_to_algebra(const Eigen::Ref<const Matrix>& m, const BlockAlgebra& algebra) {
  AlgebraElement elem = AlgebraElement::from_ambient(algebra, m);
  const double mass = (m - elem.embed()).norm();
  return AlgebraProjection{std::move(elem), mass};
}

}  // namespace smod
