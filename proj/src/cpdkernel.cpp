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

#include "smod/cpdkernel.hpp"

#include <limits>

#include "smod/random.hpp"

namespace smod {

namespace {

Matrix combine(const std::vector<Matrix>& ops, const Eigen::Ref<const Vector>& coords, Index rows, Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  for (Index k = 0; k < coords.size(); ++k) {
    if (coords(k) != Complex(0)) out += coords(k) * ops[std::size_t(k)];
  }
  return out;
}

// I_Ω ⊗ L ⊗ I_r on the (σ, p, t) generator index.
Matrix lift(const Matrix& l, Index omega, Index r) {
  return Eigen::kroneckerProduct(Matrix::Identity(omega, omega), kron_identity(l, r)).eval();
}

double kernel_scale(const Kernel& k, const Matrix& gram) {
  const Vector unit = unit_coords(k.source);
  double s = 0;
  for (Index i = 0; i < k.size(); ++i) s = std::max(s, spectral_norm(k.at(i, i, unit)));
  if (s > 1e-14) return s;
  const double g = spectral_norm(gram);
  return g > 1e-14 ? g : 1.0;
}

}  // namespace

Matrix Kernel::at(Index s, Index s2, const Eigen::Ref<const Vector>& coords) const {
  const Index r = target.ambient_dim();
  Matrix out = Matrix::Zero(r, r);
  for (Index p = 0; p < coords.size(); ++p) {
    if (coords(p) != Complex(0)) out += coords(p) * value(s, s2, p);
  }
  return out;
}

void Kernel::check_shapes(const Tolerances& tol) const {
  const Index r = target.ambient_dim();
  const auto expected = std::size_t(size() * size() * source.dim());
  if (omega.empty()) throw Error(ErrorKind::DimensionMismatch, "Ω must be non-empty");
  if (values.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch, "kernel needs " + std::to_string(expected) + " values, got " +
                                                  std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].rows() != r || values[i].cols() != r) {
      throw Error(ErrorKind::DimensionMismatch, "kernel value " + std::to_string(i) + " must be " +
                                                    std::to_string(r) + "x" + std::to_string(r));
    }
    const double mass = project_to_algebra(values[i], target).off_block_mass;
    if (mass > tol.residual_tol) {
      throw Error(ErrorKind::InvalidArgument, "kernel value " + std::to_string(i) + " leaves 𝒞", mass);
    }
  }
}

double kernel_hermiticity_residual(const Kernel& k) {
  double worst = 0;
  for (Index s = 0; s < k.size(); ++s)
    for (Index s2 = 0; s2 < k.size(); ++s2)
      for (Index p = 0; p < k.source.dim(); ++p) {
        const Matrix& lhs = k.value(s, s2, adjoint_index(k.source, p));
        worst = std::max(worst, (lhs - k.value(s2, s, p).adjoint()).norm());
      }
  return worst;
}

Matrix kernel_gram(const Kernel& k, const StarAutomorphism& alpha) {
  if (!(alpha.algebra() == k.source)) throw Error(ErrorKind::AlgebraMismatch, "α acts on a different algebra");
  const Index dim = k.source.dim();
  const Index r = k.target.ambient_dim();
  const Index w = k.size();
  const auto basis = canonical_basis(k.source);
  std::vector<AlgebraElement> left;
  for (const auto& b : basis) left.push_back(alpha.apply(b).adjoint());

  Matrix g(w * dim * r, w * dim * r);
  for (Index p = 0; p < dim; ++p) {
    for (Index q = 0; q < dim; ++q) {
      const Vector c = (left[std::size_t(p)] * basis[std::size_t(q)]).coords();
      for (Index s = 0; s < w; ++s)
        for (Index s2 = 0; s2 < w; ++s2) g.block((s * dim + p) * r, (s2 * dim + q) * r, r, r) = k.at(s, s2, c);
    }
  }
  return g;
}

CpdCertificate verify_alpha_cpd(const Kernel& k, const StarAutomorphism& alpha, const Tolerances& tol) {
  k.check_shapes(tol);
  CpdCertificate cert;
  cert.hermiticity_residual = kernel_hermiticity_residual(k);
  if (cert.hermiticity_residual > tol.residual_tol) {
    throw Error(ErrorKind::NonHermitianKernel, "𝔎(b*) ≠ 𝔎(b)* with the indices swapped", cert.hermiticity_residual);
  }
  const Index dim = k.source.dim();
  const Index r = k.target.ambient_dim();
  const auto basis = canonical_basis(k.source);
  for (Index p = 0; p < dim; ++p) {
    const Vector c = alpha.apply(basis[std::size_t(p)]).coords();
    for (Index s = 0; s < k.size(); ++s)
      for (Index s2 = 0; s2 < k.size(); ++s2) {
        cert.alpha_invariance_residual =
            std::max(cert.alpha_invariance_residual, (k.at(s, s2, c) - k.value(s, s2, p)).norm());
      }
  }

  const Matrix raw = kernel_gram(k, alpha);
  const Matrix g = (raw + raw.adjoint()) * 0.5;
  cert.scale = kernel_scale(k, g);
  const GramPencil pencil(g, cert.scale, tol);
  cert.gram_min_eig = pencil.min_eig();
  cert.gram_rank = pencil.rank();
  for (const auto& b : basis) {
    const Matrix ms = lift(left_multiplication_matrix(b), k.size(), r);
    cert.cond_iii_nullspace_leak = std::max(cert.cond_iii_nullspace_leak, pencil.leak(ms));
    cert.domination_table.push_back(pencil.max_ratio(ms.adjoint() * g * ms));
  }

  Report& rep = cert.report;
  rep.require_at_most("hermiticity_residual", cert.hermiticity_residual, tol.residual_tol);
  rep.require_at_most("alpha_invariance_residual", cert.alpha_invariance_residual, tol.residual_tol);
  rep.require_at_least("gram_min_eig", cert.gram_min_eig, -tol.psd_tol * cert.scale);
  rep.require_at_most("cond_iii_nullspace_leak", cert.cond_iii_nullspace_leak, tol.residual_tol);
  rep.note("scale", cert.scale);
  rep.note("gram_rank", double(cert.gram_rank));
  // G_b ⪯ M·G gives Σ c*𝔎(α(b b_i)* b b_j)c ≤ M Σ c*𝔎(α(b_i)* b_j)c, hence the norm form.
  rep.note("domination_order_sufficient", 1.0);
  cert.verdict = rep.pass();
  return cert;
}

std::optional<double> kernel_domination_constant(const Kernel& k, const StarAutomorphism& alpha,
                                                 const AlgebraElement& b, const Tolerances& tol) {
  if (!(b.algebra() == k.source)) throw Error(ErrorKind::AlgebraMismatch, "b must lie in ℬ");
  const Matrix raw = kernel_gram(k, alpha);
  const Matrix g = (raw + raw.adjoint()) * 0.5;
  const GramPencil pencil(g, kernel_scale(k, g), tol);
  const Matrix lb = lift(left_multiplication_matrix(b), k.size(), k.target.ambient_dim());
  const Matrix gb = lb.adjoint() * g * lb;
  if (pencil.null_leak(gb, 1) > tol.residual_tol) return std::nullopt;
  return pencil.max_ratio(gb);
}

Report verify_kfamily(const KFamily& fam, const Tolerances& tol) {
  const ConcreteModule& e = *fam.e;
  const ConcreteModule& f = *fam.f;
  const Kernel& k = fam.kernel;
  if (!(e.algebra() == k.source) || !(f.algebra() == k.target)) {
    throw Error(ErrorKind::AlgebraMismatch, "family modules do not match the kernel's algebras");
  }
  if (Index(fam.maps.size()) != k.size()) throw Error(ErrorKind::DimensionMismatch, "need one map per σ");
  for (const auto& m : fam.maps) {
    if (m.rows() != f.dim() || m.cols() != e.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "maps must be " + std::to_string(f.dim()) + "x" + std::to_string(e.dim()));
    }
  }
  std::vector<std::vector<Matrix>> img(fam.maps.size());
  for (std::size_t s = 0; s < fam.maps.size(); ++s)
    for (Index q = 0; q < e.dim(); ++q) img[s].push_back(f.realize(fam.maps[s].col(q)));
  double worst = 0;
  for (Index q = 0; q < e.dim(); ++q)
    for (Index q2 = 0; q2 < e.dim(); ++q2) {
      const Matrix ip = e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(q2)];
      const Vector c = project_to_algebra(ip, e.algebra()).elem.coords();
      for (Index s = 0; s < k.size(); ++s)
        for (Index s2 = 0; s2 < k.size(); ++s2) {
          const Matrix lhs = img[std::size_t(s)][std::size_t(q)].adjoint() * img[std::size_t(s2)][std::size_t(q2)];
          worst = std::max(worst, (lhs - k.at(s, s2, c)).norm());
        }
    }
  Report rep;
  rep.require_at_most("kfamily_law", worst, tol.residual_tol);
  return rep;
}

RksCorrespondence construct_correspondence(const Kernel& k, const StarAutomorphism& alpha, const Tolerances& tol) {
  const CpdCertificate cert = verify_alpha_cpd(k, alpha, tol);
  if (!cert.verdict) {
    const std::string worst = cert.report.worst();
    throw Error(ErrorKind::NotAlphaCpd, "kernel fails " + worst, cert.report.value(worst));
  }
  const Index dim = k.source.dim();
  const Index r = k.target.ambient_dim();
  const Index w = k.size();
  const Matrix g = [&] {
    const Matrix raw = kernel_gram(k, alpha);
    return Matrix((raw + raw.adjoint()) * 0.5);
  }();
  PsdQuotient<double> quotient;
  try {
    quotient = psd_quotient(g, tol);
  } catch (const Error& err) {
    throw Error(ErrorKind::NotAlphaCpd, err.what(), err.value());
  }

  RksCorrespondence c;
  c.hf_dim = quotient.rank;
  c.generators = quotient.coords;
  const Matrix& x = c.generators;
  const Index hf = c.hf_dim;
  Report& rep = c.certificate;
  rep.absorb("cpd", cert.report);

  auto fit_check = [&](const std::string& name, double residual, const Matrix& target) {
    const double limit = tol.residual_tol * std::max(1.0, target.norm());
    rep.require_at_most(name, residual, limit);
    if (!(residual <= limit)) throw Error(ErrorKind::IllDefinedQuotientMap, name + " is not well defined", residual);
  };

  auto u = fit_operator(x, Matrix(x * lift(alpha.action_matrix(), w, r)), tol);
  fit_check("fit.u", u.residual, x);
  c.u = std::move(u.op);
  double worst_pi = 0;
  for (const auto& b : canonical_basis(k.source)) {
    auto fit = fit_operator(x, Matrix(x * lift(left_multiplication_matrix(b), w, r)), tol);
    worst_pi = std::max(worst_pi, fit.residual);
    c.pi_on_basis.push_back(std::move(fit.op));
  }
  fit_check("fit.pi", worst_pi, x);

  const Vector unit = unit_coords(k.source);
  std::vector<Matrix> gens;
  for (Index s = 0; s < w; ++s) {
    Matrix ks = Matrix::Zero(hf, r);
    for (Index p = 0; p < dim; ++p) {
      gens.push_back(c.generator(s, p, dim, r));
      if (unit(p) != Complex(0)) ks += unit(p) * gens.back();
    }
    c.kernel_elements.push_back(std::move(ks));
  }
  c.fmodule = share(make_module(k.target, hf, gens, tol));

  const Matrix id = Matrix::Identity(hf, hf);
  rep.require_at_most("u_unitarity",
                      std::max((c.u.adjoint() * c.u - id).norm(), (c.u * c.u.adjoint() - id).norm()), 1e-9);
  rep.require_at_most("gram_reproduction", (x.adjoint() * x - g).norm() / std::max(1.0, g.norm()), tol.residual_tol);

  const Matrix a = alpha.action_matrix();
  double star_alpha = 0;
  double bound_excess = -std::numeric_limits<double>::infinity();
  for (Index s = 0; s < dim; ++s) {
    const Matrix& ps = c.pi_on_basis[std::size_t(adjoint_index(k.source, s))];
    star_alpha = std::max(star_alpha, (ps.adjoint() - combine(c.pi_on_basis, a.col(s), hf, hf)).norm());
    const double norm = spectral_norm(c.pi_on_basis[std::size_t(s)]);
    bound_excess = std::max(bound_excess, norm * norm - cert.domination_table[std::size_t(s)]);
  }
  if (dim == 0 || hf == 0) bound_excess = 0;
  rep.require_at_most("pi_star_alpha", star_alpha, tol.residual_tol);
  rep.require_at_most("pi_bound_excess", bound_excess, tol.residual_tol);

  try {
    const URepresentation pi{k.source, SModule(c.fmodule, c.u, tol), c.pi_on_basis};
    rep.absorb("representation", verify_u_representation(pi, tol));
  } catch (const Error&) {
    rep.require_at_most("representation.constructible", std::numeric_limits<double>::infinity(), 0);
  }
  rep.absorb("reproducing", verify_reproducing(c, k, alpha, tol));
  rep.note("hf_dim", double(hf));
  return c;
}

Report verify_reproducing(const RksCorrespondence& c, const Kernel& k, const StarAutomorphism& alpha,
                          const Tolerances& tol) {
  const Index dim = k.source.dim();
  const Index r = k.target.ambient_dim();
  const Index hf = c.hf_dim;
  const Index w = k.size();
  if (c.generators.rows() != hf || c.generators.cols() != w * dim * r || Index(c.pi_on_basis.size()) != dim ||
      Index(c.kernel_elements.size()) != w) {
    throw Error(ErrorKind::DimensionMismatch, "correspondence shapes do not match the kernel");
  }
  const auto basis = canonical_basis(k.source);
  const auto table = basis_product_table(k.source);

  // π(α(b_s*)) k_σ, the left-hand side of the second pairing.
  std::vector<Matrix> twisted;
  for (Index s = 0; s < dim; ++s) {
    const Vector coords = alpha.apply(basis[std::size_t(s)].adjoint()).coords();
    const Matrix op = combine(c.pi_on_basis, coords, hf, hf);
    for (Index sigma = 0; sigma < w; ++sigma) twisted.push_back(op * c.kernel_elements[std::size_t(sigma)]);
  }

  double evaluation = 0;
  double pairing = 0;
  for (Index s2 = 0; s2 < w; ++s2) {
    for (Index p = 0; p < dim; ++p) {
      const Matrix f = c.generator(s2, p, dim, r);
      for (Index s = 0; s < dim; ++s) {
        const Matrix bf = c.pi_on_basis[std::size_t(s)] * f;
        const Index prod = table[std::size_t(s * dim + p)];
        for (Index sigma = 0; sigma < w; ++sigma) {
          const Matrix expected = prod >= 0 ? k.value(sigma, s2, prod) : Matrix::Zero(r, r);
          const Matrix lhs = c.kernel_elements[std::size_t(sigma)].adjoint() * bf;
          evaluation = std::max(evaluation, (lhs - expected).norm());
          const Matrix& t = twisted[std::size_t(s * w + sigma)];
          pairing = std::max(pairing, (t.adjoint() * f - expected).norm());
        }
      }
    }
  }
  Report rep;
  rep.require_at_most("evaluation", evaluation, tol.residual_tol);
  rep.require_at_most("twisted_pairing", pairing, tol.residual_tol);
  return rep;
}

Kernel rederive_kernel(const RksCorrespondence& c, const Kernel& like) {
  Kernel out{like.omega, like.source, like.target, {}};
  for (Index s = 0; s < like.size(); ++s)
    for (Index s2 = 0; s2 < like.size(); ++s2)
      for (Index p = 0; p < like.source.dim(); ++p) {
        out.values.push_back(c.kernel_elements[std::size_t(s)].adjoint() * c.pi_on_basis[std::size_t(p)] *
                             c.kernel_elements[std::size_t(s2)]);
      }
  return out;
}

namespace {

// 𝒦^σ(e_q b_s) realized in F, indexed (σ, q, s).
std::vector<Matrix> family_images(const KFamily& fam) {
  const ConcreteModule& e = *fam.e;
  const ConcreteModule& f = *fam.f;
  const auto basis = canonical_basis(fam.kernel.source);
  std::vector<Matrix> out;
  for (const auto& m : fam.maps)
    for (const auto& x : e.basis())
      for (const auto& b : basis) out.push_back(f.realize(m * e.coordinates(x * b.embed())));
  return out;
}

}  // namespace

Report verify_kfamily_factorization(const KFamily& fam, const RksCorrespondence& c, const StarAutomorphism& alpha,
                                    const Tolerances& tol) {
  Report rep = verify_kfamily(fam, tol);
  const ConcreteModule& e = *fam.e;
  const Kernel& k = fam.kernel;
  const Index dim = k.source.dim();
  const Index de = e.dim();
  const Index w = k.size();
  const Index hf = c.hf_dim;
  const Index r = k.target.ambient_dim();
  const auto basis = canonical_basis(k.source);
  const auto images = family_images(fam);
  const Matrix a = alpha.action_matrix();

  // α(b_s)k_σ and π(b_k)k_σ′.
  std::vector<Matrix> left(std::size_t(w * dim));
  std::vector<Matrix> right(std::size_t(w * dim));
  for (Index s = 0; s < w; ++s)
    for (Index p = 0; p < dim; ++p) {
      const Matrix& ks = c.kernel_elements[std::size_t(s)];
      left[std::size_t(s * dim + p)] = combine(c.pi_on_basis, a.col(p), hf, hf) * ks;
      right[std::size_t(s * dim + p)] = c.pi_on_basis[std::size_t(p)] * ks;
    }

  auto img = [&](Index s, Index q, Index p) -> const Matrix& {
    return images[std::size_t((s * de + q) * dim + p)];
  };
  double worst = 0;
  for (Index q = 0; q < de; ++q)
    for (Index q2 = 0; q2 < de; ++q2) {
      const AlgebraElement ip =
          project_to_algebra(e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(q2)], e.algebra()).elem;
      for (Index p2 = 0; p2 < dim; ++p2) {
        const Vector coords = (ip * basis[std::size_t(p2)]).coords();
        for (Index s2 = 0; s2 < w; ++s2) {
          Matrix rhs_vec = Matrix::Zero(hf, r);
          for (Index j = 0; j < dim; ++j) {
            if (coords(j) != Complex(0)) rhs_vec += coords(j) * right[std::size_t(s2 * dim + j)];
          }
          for (Index s = 0; s < w; ++s)
            for (Index p = 0; p < dim; ++p) {
              const Matrix lhs = img(s, q, p).adjoint() * img(s2, q2, p2);
              const Matrix rhs = left[std::size_t(s * dim + p)].adjoint() * rhs_vec;
              worst = std::max(worst, (lhs - rhs).norm());
            }
        }
      }
    }
  rep.require_at_most("factorization_identity", worst, tol.residual_tol);
  return rep;
}

Report nu_isometry_check(const KFamily& fam, const RksCorrespondence& c, const StarAutomorphism& alpha,
                         const Tolerances& tol) {
  if (!alpha.is_identity()) throw Error(ErrorKind::AlphaNotIdentity, "ν is only claimed isometric for α = id");
  const ConcreteModule& e = *fam.e;
  const Kernel& k = fam.kernel;
  const Index dim = k.source.dim();
  const Index de = e.dim();
  const Index w = k.size();
  const Index hf = c.hf_dim;
  const Index r = k.target.ambient_dim();
  const auto images = family_images(fam);

  // Tensor generators x ⊗ b k_σ ordered (σ, q, s); columns t of c = 1.
  const Index count = w * de * dim;
  Matrix tensor_gram(count * r, count * r);
  Matrix image_gram(count * r, count * r);
  std::vector<Matrix> f;  // π(b_s)k_σ
  for (Index s = 0; s < w; ++s)
    for (Index p = 0; p < dim; ++p) f.push_back(c.pi_on_basis[std::size_t(p)] * c.kernel_elements[std::size_t(s)]);
  std::vector<Matrix> pi_ip(std::size_t(de * de));
  for (Index q = 0; q < de; ++q)
    for (Index q2 = 0; q2 < de; ++q2) {
      const Vector coords = project_to_algebra(e.basis()[std::size_t(q)].adjoint() * e.basis()[std::size_t(q2)],
                                               e.algebra())
                                .elem.coords();
      pi_ip[std::size_t(q * de + q2)] = combine(c.pi_on_basis, coords, hf, hf);
    }
  for (Index i = 0; i < count; ++i) {
    const Index si = i / (de * dim), qi = (i / dim) % de, pi = i % dim;
    for (Index j = 0; j < count; ++j) {
      const Index sj = j / (de * dim), qj = (j / dim) % de, pj = j % dim;
      tensor_gram.block(i * r, j * r, r, r) = f[std::size_t(si * dim + pi)].adjoint() *
                                              pi_ip[std::size_t(qi * de + qj)] * f[std::size_t(sj * dim + pj)];
      image_gram.block(i * r, j * r, r, r) = images[std::size_t(i)].adjoint() * images[std::size_t(j)];
    }
  }
  Report rep;
  const double diff = count == 0 ? 0.0 : (tensor_gram - image_gram).cwiseAbs().maxCoeff();
  rep.require_at_most("nu_gram_difference", diff, tol.residual_tol);
  return rep;
}

KernelSizes KernelSizes::level(int s) {
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "size level must be at least 1");
  KernelSizes out;
  out.omega = std::min<Index>(s + 1, 4);
  out.first_block = 2;
  out.second_block = s >= 2 ? 2 : 1;
  out.target_block = s >= 3 ? 2 : 1;
  out.multiplicity = std::min<Index>(s, 2);
  out.module_rows = 2;
  return out;
}

Kernel scalar_kernel(const Matrix& k) {
  if (k.rows() != k.cols()) throw Error(ErrorKind::NonSquare, "scalar kernel must be square");
  Kernel out{{}, BlockAlgebra::full(1), BlockAlgebra::full(1), {}};
  for (Index i = 0; i < k.rows(); ++i) out.omega.push_back("s" + std::to_string(i));
  for (Index i = 0; i < k.rows(); ++i)
    for (Index j = 0; j < k.cols(); ++j) out.values.push_back(Matrix::Constant(1, 1, k(i, j)));
  return out;
}

KernelInstance generate_kernel_instance(Family family, const KernelSizes& sizes, std::uint64_t seed) {
  if (family == Family::F3) {
    if (seed % 2 == 0) {
      Kernel k = scalar_kernel(Matrix::Identity(2, 2));
      k.values[1](0, 0) = 1.0;  // 𝔎^{0,1}(1) = 1 while 𝔎^{1,0}(1) = 0
      return {std::move(k), StarAutomorphism::identity(BlockAlgebra::full(1)), std::nullopt, false,
              "hermiticity-broken"};
    }
    Matrix g(2, 2);
    g << 1, 2, 2, 1;
    return {scalar_kernel(g), StarAutomorphism::identity(BlockAlgebra::full(1)), std::nullopt, false,
            "gram-indefinite"};
  }
  if (sizes.omega < 1 || sizes.first_block < 1 || sizes.second_block < 0 || sizes.target_block < 1 ||
      sizes.multiplicity < 1 || sizes.module_rows < 1) {
    throw Error(ErrorKind::InvalidArgument, "kernel sizes must be positive");
  }
  if (family == Family::F2 && sizes.second_block < 2) {
    throw Error(ErrorKind::InvalidArgument, "F2 kernels need a twisted block of size ≥ 2");
  }
  std::vector<Index> dims{sizes.first_block};
  if (sizes.second_block > 0) dims.push_back(sizes.second_block);
  const BlockAlgebra b(dims);
  if (b.dim() > kMaxAlgebraDim || sizes.omega > kMaxOmega || sizes.target_block > kMaxCarrierRows) {
    throw Error(ErrorKind::SizeCapExceeded, "kernel instance exceeds the size caps");
  }
  const BlockAlgebra cc = BlockAlgebra::full(sizes.target_block);
  const Index n1 = sizes.first_block;
  const Index mu = sizes.multiplicity;
  const Index r = sizes.target_block;

  Rng rng(seed);
  std::vector<Matrix> us;
  std::vector<Index> perm;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    perm.push_back(Index(i));
    us.push_back(Matrix::Identity(dims[i], dims[i]));
  }
  if (family == Family::F2) us.back() = rng.unitary(dims.back());
  StarAutomorphism alpha(b, std::move(perm), std::move(us));

  std::vector<Matrix> ks;
  double top = 0;
  for (Index s = 0; s < sizes.omega; ++s) {
    ks.push_back(rng.matrix(n1 * mu, r));
    top = std::max(top, spectral_norm(Matrix(ks.back().adjoint() * ks.back())));
  }
  for (auto& kv : ks) kv /= std::sqrt(top);

  Kernel k{{}, b, cc, {}};
  for (Index s = 0; s < sizes.omega; ++s) k.omega.push_back("s" + std::to_string(s));
  const Matrix id_mu = Matrix::Identity(mu, mu);
  for (Index s = 0; s < sizes.omega; ++s)
    for (Index s2 = 0; s2 < sizes.omega; ++s2)
      for (const auto& basis : canonical_basis(b)) {
        const Matrix rho = Eigen::kroneckerProduct(basis.block(0), id_mu).eval();
        k.values.push_back(ks[std::size_t(s)].adjoint() * rho * ks[std::size_t(s2)]);
      }

  // 𝒦^σ(x) = W(x₁ ⊗ I_μ)K_σ with W an isometry into ℂ^h′.
  std::vector<Index> rows{sizes.module_rows};
  if (dims.size() > 1) rows.push_back(1);
  auto e = share(standard_module(b, rows));
  const Index m1 = sizes.module_rows;
  const Index hp = m1 * mu + 1;
  const Matrix wiso = rng.unitary(hp).leftCols(m1 * mu);
  auto f = share(standard_module(cc, {hp}));
  std::vector<Matrix> maps;
  for (Index s = 0; s < sizes.omega; ++s) {
    Matrix m(f->dim(), e->dim());
    for (Index q = 0; q < e->dim(); ++q) {
      const Matrix x1 = e->basis()[std::size_t(q)].topLeftCorner(m1, n1);
      m.col(q) = f->coordinates(wiso * Eigen::kroneckerProduct(x1, id_mu).eval() * ks[std::size_t(s)]);
    }
    maps.push_back(std::move(m));
  }
  KFamily fam{k, std::move(e), std::move(f), std::move(maps)};
  return {std::move(k), std::move(alpha), std::move(fam), true, to_string(family)};
}

}  // namespace smod
