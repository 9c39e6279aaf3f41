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

// Dense complex linear algebra shared by every construction in the library:
// a deterministic Hermitian eigensolver, the rank-revealing PSD quotient that
// realizes "quotient by the null space" numerically, and least-squares
// operator fitting on quotient coordinates.
//
// Everything here is header-only and templated on the matrix expression so it
// can be called with float, double or long double complex matrices; the rest
// of the library instantiates it with std::complex<double>.

#ifndef SMOD_NUMKIT_HPP_
#define SMOD_NUMKIT_HPP_

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "smod/error.hpp"

namespace smod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

template <typename Real>
using MatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct Tolerances {
  double psd_tol = 1e-9;
  double rank_tol = 1e-10;
  double residual_tol = 1e-8;

  void validate() const {
    if (!(psd_tol > 0) || !(rank_tol > 0) || !(residual_tol > 0)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
    }
  }
};

// Absolute floor under the relative rank threshold.
inline constexpr double kRankFloor = 1e-14;

template <typename Real>
struct HermitianEig {
  RealVectorX<Real> values;  // descending
  MatrixX<Real> vectors;     // columns, unit norm
};

namespace detail {

template <typename Real>
Index first_nonzero(const Eigen::Ref<const MatrixX<Real>>& v, Index col, Real cutoff) {
  for (Index i = 0; i < v.rows(); ++i) {
    if (std::abs(v(i, col)) > cutoff) return i;
  }
  return v.rows();
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Each eigenvector is phase-normalized so its first
/// nonzero coordinate is real and positive; within a cluster of tied
/// eigenvalues, vectors are ordered by the position of that coordinate and
/// then by its magnitude (larger first). Identical input bits give identical
/// output bits.
template <typename Derived>
HermitianEig<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_eig(
    const Eigen::MatrixBase<Derived>& m, bool symmetrize, const Tolerances& tol = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = MatrixX<Real>;
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NonSquare,
                "expected a square matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const Index n = m.rows();
  HermitianEig<Real> out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  Mat a = m.template cast<std::complex<Real>>();
  const Real skew = (a - a.adjoint()).norm();
  if (!symmetrize && skew > Real(tol.residual_tol) * a.norm()) {
    throw Error(ErrorKind::NonHermitian, "‖M − M*‖_F = " + std::to_string(double(skew)), double(skew));
  }
  a = (a + a.adjoint()) * Real(0.5);

  Eigen::SelfAdjointEigenSolver<Mat> solver(a);
  const RealVectorX<Real> asc = solver.eigenvalues();
  const Mat& vecs = solver.eigenvectors();

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = asc(n - 1 - k);
    out.vectors.col(k) = vecs.col(n - 1 - k);
  }

  const Real cutoff = Real(1e-10);
  for (Index k = 0; k < n; ++k) {
    const Index lead = detail::first_nonzero<Real>(out.vectors, k, cutoff);
    if (lead < n) {
      const std::complex<Real> z = out.vectors(lead, k);
      out.vectors.col(k) *= std::conj(z) / std::abs(z);
      out.vectors(lead, k) = std::abs(out.vectors(lead, k));
    }
  }

  const Real scale = std::max<Real>(Real(1), out.values.cwiseAbs().maxCoeff());
  const Real tie = Real(1e-12) * scale;
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && out.values(stop - 1) - out.values(stop) <= tie) ++stop;
    if (stop - start > 1) {
      std::vector<Index> order(static_cast<std::size_t>(stop - start));
      std::iota(order.begin(), order.end(), start);
      std::vector<Index> lead(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        lead[i] = detail::first_nonzero<Real>(out.vectors, order[i], cutoff);
      }
      std::vector<std::size_t> perm(order.size());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        if (lead[x] != lead[y]) return lead[x] < lead[y];
        if (lead[x] == n) return false;
        return std::abs(out.vectors(lead[x], order[x])) > std::abs(out.vectors(lead[y], order[y]));
      });
      const Mat block = out.vectors.middleCols(start, stop - start);
      const RealVectorX<Real> vals = out.values.segment(start, stop - start);
      for (std::size_t i = 0; i < perm.size(); ++i) {
        out.vectors.col(start + Index(i)) = block.col(Index(perm[i]));
        out.values(start + Index(i)) = vals(Index(perm[i]));
      }
    }
    start = stop;
  }
  return out;
}

template <typename Real>
struct PsdQuotient {
  Index rank = 0;
  MatrixX<Real> coords;  // rank × (order of G)
  Real min_eig = 0;
  Real max_eig = 0;
};

/// Factor a PSD Gram matrix as coords* · coords with coords of full row rank.
/// Column j of coords is the image of generator j in the quotient by the
/// null space. Throws NotPSD when the most negative eigenvalue falls below
/// −psd_tol · max(λ_max, 1).
template <typename Derived>
PsdQuotient<typename Eigen::NumTraits<typename Derived::Scalar>::Real> psd_quotient(
    const Eigen::MatrixBase<Derived>& gram, const Tolerances& tol = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  PsdQuotient<Real> out;
  const auto eig = hermitian_eig(gram, /*symmetrize=*/false, tol);
  const Index n = eig.values.size();
  if (n == 0) {
    out.coords.resize(0, 0);
    return out;
  }
  out.max_eig = eig.values(0);
  out.min_eig = eig.values(n - 1);
  if (out.min_eig < -Real(tol.psd_tol) * std::max<Real>(out.max_eig, Real(1))) {
    throw Error(ErrorKind::NotPSD, "Gram matrix has eigenvalue " + std::to_string(double(out.min_eig)),
                double(out.min_eig));
  }
  const Real threshold = std::max<Real>(Real(tol.rank_tol) * out.max_eig, Real(kRankFloor));
  Index rank = 0;
  while (rank < n && eig.values(rank) > threshold) ++rank;
  out.rank = rank;
  out.coords = eig.values.head(rank).cwiseSqrt().asDiagonal() * eig.vectors.leftCols(rank).adjoint();
  return out;
}

template <typename Real>
struct OperatorFit {
  MatrixX<Real> op;
  Real residual = 0;
};

/// Least-squares, minimum-norm solution of op · source = target. A residual
/// above residual_tol means the map prescribed on generators does not descend
/// to the quotient; that is reported, not thrown.
template <typename DerivedS, typename DerivedT>
OperatorFit<typename Eigen::NumTraits<typename DerivedS::Scalar>::Real> fit_operator(
    const Eigen::MatrixBase<DerivedS>& source, const Eigen::MatrixBase<DerivedT>& target, const Tolerances& tol = {}) {
  using Real = typename Eigen::NumTraits<typename DerivedS::Scalar>::Real;
  using Mat = MatrixX<Real>;
  if (source.cols() != target.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "fit_operator: source has " + std::to_string(source.cols()) +
                                                  " generators, target has " + std::to_string(target.cols()));
  }
  OperatorFit<Real> out;
  const Mat src = source.template cast<std::complex<Real>>();
  const Mat tgt = target.template cast<std::complex<Real>>();
  if (src.rows() == 0 || src.cols() == 0 || src.norm() == Real(0)) {
    out.op = Mat::Zero(tgt.rows(), src.rows());
    out.residual = tgt.norm();
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  cod.setThreshold(Real(tol.rank_tol));
  cod.compute(src.transpose());
  out.op = cod.solve(Mat(tgt.transpose())).transpose();
  out.residual = (out.op * src - tgt).norm();
  return out;
}

/// Orthonormal basis (as columns) for the span of the given columns, built by
/// two-pass modified Gram–Schmidt in column order. Columns whose remainder is
/// below rel_tol times the largest column norm are dropped.
template <typename Derived>
MatrixX<typename Eigen::NumTraits<typename Derived::Scalar>::Real> gram_schmidt(
    const Eigen::MatrixBase<Derived>& columns, double rel_tol) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Mat = MatrixX<Real>;
  const Mat cols = columns.template cast<std::complex<Real>>();
  Real largest = 0;
  for (Index j = 0; j < cols.cols(); ++j) largest = std::max(largest, cols.col(j).norm());
  Mat basis(cols.rows(), std::min(cols.rows(), cols.cols()));
  Index found = 0;
  if (largest == Real(0)) return basis.leftCols(0);
  const Real cutoff = Real(rel_tol) * largest;
  for (Index j = 0; j < cols.cols() && found < cols.rows(); ++j) {
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> v = cols.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < found; ++k) v -= basis.col(k) * basis.col(k).dot(v);
    }
    const Real norm = v.norm();
    if (norm > cutoff) basis.col(found++) = v / norm;
  }
  return basis.leftCols(found);
}

/// Largest Frobenius norm over the b×b blocks of a (k·b)×(l·b) matrix.
template <typename Derived>
double max_block_frobenius(const Eigen::MatrixBase<Derived>& m, Index b) {
  double worst = 0;
  if (b <= 0) return 0;
  for (Index i = 0; i + b <= m.rows(); i += b)
    for (Index j = 0; j + b <= m.cols(); j += b) worst = std::max(worst, double(m.block(i, j, b, b).norm()));
  return worst;
}

// L ⊗ I_b: the generator-space lift of an action matrix L.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron_identity(
    const Eigen::MatrixBase<Derived>& l, Index b) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Eigen::kroneckerProduct(l.eval(), Mat::Identity(b, b)).eval();
}

/// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m.eval());
  return double(svd.singularValues()(0));
}

/// Numerical rank relative to the largest singular value.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m.eval());
  const auto& s = svd.singularValues();
  if (s(0) <= 0) return 0;
  Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0) && s(r) > kRankFloor) ++r;
  return r;
}

}  // namespace smod

#endif  // SMOD_NUMKIT_HPP_
