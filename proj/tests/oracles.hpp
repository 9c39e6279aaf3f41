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

// Reference computations used to check the library. They deliberately avoid
// the library's numerics: plain Eigen solvers, explicit loops over matrix
// units, no quotient or pencil machinery.

#ifndef SMOD_TESTS_ORACLES_HPP_
#define SMOD_TESTS_ORACLES_HPP_

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline Mat unit(Index k, Index i, Index j) {
  Mat e = Mat::Zero(k, k);
  e(i, j) = 1;
  return e;
}

inline double min_eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline Index rank(const Mat& h, double rel = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  Index r = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) r += es.eigenvalues()(i) > std::max(rel * top, 1e-14);
  return r;
}

// τ: M_k → M_n given as a callback on k×k matrices.
template <typename Map>
Mat choi(const Map& tau, Index k, Index n) {
  Mat c(k * n, k * n);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) c.block(i * n, j * n, n, n) = tau(unit(k, i, j));
  return c;
}

// Kraus operators V_l (k×n) with τ(a) = Σ V_l* a V_l, read off the Choi
// eigenvectors: C_{(i,x),(j,y)} = Σ conj(V_ix) V_jy.
inline std::vector<Mat> kraus_from_choi(const Mat& c, Index k, Index n, double rel = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Mat> es((c + c.adjoint()) * 0.5);
  const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Mat> out;
  for (Index l = 0; l < c.rows(); ++l) {
    const double lam = es.eigenvalues()(l);
    if (lam <= rel * top) continue;
    Mat v(k, n);
    for (Index i = 0; i < k; ++i)
      for (Index x = 0; x < n; ++x) v(i, x) = std::conj(std::sqrt(lam) * es.eigenvectors()(i * n + x, l));
    out.push_back(v);
  }
  return out;
}

// Minimal Stinespring vectors (a_p ⊗ I)V e_q for the matrix-unit basis a_p of
// M_k, columns ordered (p, q); V x = Σ_l V_l x ⊗ δ_l.
inline Mat stinespring_vectors(const std::vector<Mat>& kraus, Index k, Index n) {
  const Index r = Index(kraus.size());
  Mat out = Mat::Zero(k * r, k * k * n);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      for (Index q = 0; q < n; ++q) {
        const Index col = (i * k + j) * n + q;
        for (Index l = 0; l < r; ++l) {
          // (E_ij ⊗ I) applied to V_l e_q ⊗ δ_l keeps row i of V_l e_q, from its entry j.
          out(i * r + l, col) = kraus[std::size_t(l)](j, q);
        }
      }
  return out;
}

// G_{(p,q),(p′,q′)} = e_q* τ(α(a_p)* a_p′) e_q′ for α = Ad(u) on M_k.
template <typename Map>
Mat twisted_gram(const Map& tau, const Mat& u, Index k, Index n) {
  Mat g(k * k * n, k * k * n);
  for (Index p = 0; p < k * k; ++p)
    for (Index p2 = 0; p2 < k * k; ++p2) {
      const Mat ap = u * unit(k, p / k, p % k) * u.adjoint();
      const Mat t = tau(Mat(ap.adjoint() * unit(k, p2 / k, p2 % k)));
      g.block(p * n, p2 * n, n, n) = t;
    }
  return g;
}

inline Mat random_matrix(std::mt19937_64& gen, Index rows, Index cols) {
  std::normal_distribution<double> nd;
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(nd(gen), nd(gen));
  return m;
}

}  // namespace oracle

#endif  // SMOD_TESTS_ORACLES_HPP_
