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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Quantities are recomputed here from the stored
// matrices with plain Eigen wherever that is practical, so the library's own
// certificates are not the only witness.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smod/cli.hpp"
#include "smod/cpdkernel.hpp"
#include "smod/instances.hpp"
#include "smod/ksgns.hpp"
#include "smod/random.hpp"
#include "smod/serialize.hpp"

namespace smod {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Coordinates of an ambient matrix in the canonical basis, read entry by entry.
Vector coords_of(const Matrix& m, const BlockAlgebra& a) {
  const auto basis = canonical_basis(a);
  Vector c(Index(basis.size()));
  for (std::size_t s = 0; s < basis.size(); ++s) {
    Index row = 0, col = 0;
    basis[s].embed().cwiseAbs().maxCoeff(&row, &col);
    c(Index(s)) = m(row, col);
  }
  return c;
}

Matrix combine(const std::vector<Matrix>& ops, const Vector& c) {
  Matrix out = Matrix::Zero(ops.front().rows(), ops.front().cols());
  for (std::size_t s = 0; s < ops.size(); ++s) out += c(Index(s)) * ops[s];
  return out;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

Index svd_rank(const Matrix& m, double rel = 1e-10) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) r += s(i) > rel * std::max(s(0), 1e-300);
  return r;
}

// Every residual the dilation theorem promises, recomputed from d.
struct DilationAudit {
  double residual = 0;
  bool minimal = true;
};

DilationAudit audit_dilation(const KsgnsDilation& d, const OperatorCpMap& tau, const StarAutomorphism& alpha) {
  DilationAudit out;
  const ConcreteModule& e1 = *tau.carrier.module();
  const Matrix& q = e1.column_space();
  const Matrix& u1 = tau.carrier.unitary();
  const Index h0 = d.h0_dim;
  const BlockAlgebra& a = tau.domain;
  const auto basis = canonical_basis(a);
  const Matrix vs = d.v.adjoint();
  auto keep = [&](double x) { out.residual = std::max(out.residual, x); };

  keep((d.u0.adjoint() * d.u0 - Matrix::Identity(h0, h0)).norm());
  keep((u1.adjoint() * vs * d.u0 - vs).norm());
  if (h0 == 0) {
    for (const auto& t : tau.on_basis) keep((t * q).norm());
    return out;
  }
  keep((combine(d.pi0, AlgebraElement::identity(a).coords()) - Matrix::Identity(h0, h0)).norm());

  Matrix gens(h0, 0);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const Matrix& pp = d.pi0[p];
    keep(((tau.on_basis[p] - vs * pp * d.v) * q).norm());
    // π₀(a*) = U₀*π₀(a)*U₀
    const Matrix star = combine(d.pi0, coords_of(basis[p].embed().adjoint(), a));
    keep((star - d.u0.adjoint() * pp.adjoint() * d.u0).norm());
    const Matrix ap_star = alpha.apply(basis[p]).embed().adjoint();
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const Matrix prod = basis[p].embed() * basis[s].embed();
      keep((combine(d.pi0, coords_of(prod, a)) - pp * d.pi0[s]).norm());
      // V*π₀(a)*π₀(b)V = τ(α(a)*b) on E₁
      const Matrix rhs = combine(tau.on_basis, coords_of(ap_star * basis[s].embed(), a));
      keep((q.adjoint() * (vs * pp.adjoint() * d.pi0[s] * d.v - rhs) * q).norm());
    }
    gens.conservativeResize(h0, gens.cols() + q.cols());
    gens.rightCols(q.cols()) = pp * d.v * q;
  }
  out.minimal = svd_rank(gens) == h0;
  return out;
}

std::vector<AlphaCpInstance> ksgns_corpus() {
  std::vector<AlphaCpInstance> out;
  for (std::uint64_t seed = 0; out.size() < 100; ++seed) {
    const Family fam = seed % 2 ? Family::F2 : Family::F1;
    InstanceSizes sizes = InstanceSizes::level(1 + int(seed % 3));
    if (fam == Family::F2 && sizes.blocks[0] > 3) sizes.blocks[0] = 3;
    sizes.carrier_block = 1 + Index(seed % 4 == 3);
    auto inst = generate_instance(fam, sizes, 1000 + seed);
    const Index dim = inst.tau.domain.dim();
    const Index m1 = inst.tau.carrier.module()->ambient_rows();
    if (dim > 16 || m1 > 8) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome ksgns_round_trip() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  double worst = 0;
  int ok = 0;
  for (const auto& inst : ksgns_corpus()) {
    const KsgnsDilation d = construct_ksgns(inst.tau, inst.alpha);
    const DilationAudit a = audit_dilation(d, inst.tau, inst.alpha);
    worst = std::max(worst, a.residual);
    ok += d.certificate.pass() && a.minimal && a.residual <= 1e-8;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = ok == 100 && secs <= 60;
  o.detail = std::to_string(ok) + "/100 max_residual=" + fmt("%.3g", worst) + " runtime=" + fmt("%.2fs", secs);
  return o;
}

// τ(a) = Σ c_l V_l* a V_l on M_k → M_n.
struct KrausMap {
  Index k, n;
  std::vector<Matrix> v;
  std::vector<double> c;
  double shift = 0;  // adds shift·Tr(a)·I, whose Choi matrix is shift·I
  Matrix operator()(const Matrix& a) const {
    Matrix out = shift * a.trace() * Matrix::Identity(n, n);
    for (std::size_t l = 0; l < v.size(); ++l) out += c[l] * v[l].adjoint() * a * v[l];
    return out;
  }
};

KrausMap random_kraus(Rng& rng, bool cp) {
  KrausMap m{1 + rng.below(4), 1 + rng.below(4), {}, {}, 0.0};
  const Index terms = 1 + rng.below(3);
  Matrix total = Matrix::Zero(m.n, m.n);
  for (Index l = 0; l < terms; ++l) {
    m.v.push_back(rng.matrix(m.k, m.n));
    m.c.push_back(cp || l > 0 ? 1.0 : -rng.uniform());
    total += m.v.back().adjoint() * m.v.back();
  }
  const double s = std::sqrt(std::max(op_norm(total), 1e-12));
  for (auto& v : m.v) v /= s;
  return m;
}

OperatorCpMap as_operator_map(const KrausMap& m) {
  const BlockAlgebra a = BlockAlgebra::full(m.k);
  std::vector<Matrix> values;
  for (const auto& b : canonical_basis(a)) values.push_back(m(b.embed()));
  return {a, SModule::trivial(share(standard_module(BlockAlgebra::full(1), {m.n}))), values};
}

Outcome stinespring_agreement() {
  Rng rng(2024);
  Outcome o;
  int ok = 0;
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const KrausMap m = random_kraus(rng, true);
    const OperatorCpMap tau = as_operator_map(m);
    const KsgnsDilation d = construct_ksgns(tau, StarAutomorphism::identity(tau.domain));
    const auto kraus = oracle::kraus_from_choi(oracle::choi(m, m.k, m.n), m.k, m.n);
    const Matrix w = oracle::stinespring_vectors(kraus, m.k, m.n);
    // Library vectors π₀(a_p)Ve_q in the oracle's column order.
    Matrix lib(d.h0_dim, w.cols());
    const auto& e = tau.carrier.module()->basis();
    for (Index p = 0; p < m.k * m.k; ++p)
      for (Index q = 0; q < m.n; ++q) lib.col(p * m.n + q) = d.pi0[std::size_t(p)] * d.v * e[std::size_t(q)];
    const auto fit = fit_operator(w, lib);
    const double rel = std::max(1.0, lib.norm());
    const double gram = (lib.adjoint() * lib - w.adjoint() * w).norm() / rel;
    const double iso = (fit.op.adjoint() * fit.op - Matrix::Identity(w.rows(), w.rows())).norm();
    const double r = std::max({double(fit.residual) / rel, gram, iso});
    worst = std::max(worst, r);
    ok += d.h0_dim == m.k * Index(kraus.size()) && r <= 1e-8;
  }
  o.pass = ok == 50;
  o.detail = std::to_string(ok) + "/50 max_fit_residual=" + fmt("%.3g", worst);
  return o;
}

Outcome soundness_fixtures() {
  Outcome o;
  const auto tr = negative_fixture("transpose");
  const auto tc = verify_alpha_cp(tr.tau, tr.alpha);
  const double tr_oracle = oracle::min_eig(oracle::choi(fixtures::transpose_map, 2, 2));
  const double tr_gram = oracle::min_eig(oracle::twisted_gram(fixtures::transpose_map, Matrix::Identity(2, 2), 2, 2));

  const auto sw = negative_fixture("swap-average");
  const auto sc = verify_alpha_cp(sw.tau, sw.alpha);
  // 𝒜 = ℂ², α swaps the summands, τ(e_j) = 1/2; G_pq = τ(α(e_p)* e_q).
  Matrix g(2, 2);
  for (Index p = 0; p < 2; ++p)
    for (Index q = 0; q < 2; ++q) g(p, q) = (1 - p) == q ? 0.5 : 0.0;
  const double sw_oracle = oracle::min_eig(g);

  o.pass = !tc.verdict && tc.gram_min_eig <= -0.9 * tc.scale && std::abs(tr_oracle + 1) <= 1e-12 &&
           std::abs(tc.gram_min_eig - tr_gram) <= 1e-10 && !sc.verdict && std::abs(sc.gram_min_eig + 0.5) <= 1e-10 &&
           std::abs(sw_oracle + 0.5) <= 1e-12;
  o.detail = "transpose=" + fmt("%.12g", tc.gram_min_eig) + " (scale " + fmt("%.3g", tc.scale) + ", choi " +
             fmt("%.12g", tr_oracle) + ") swap_average=" + fmt("%.12g", sc.gram_min_eig) + " (oracle " +
             fmt("%.12g", sw_oracle) + ")";
  return o;
}

Outcome verdict_agreement() {
  Rng rng(77);
  Outcome o;
  int agree = 0, cp = 0, skipped = 0;
  for (int i = 0; i < 100;) {
    KrausMap m = random_kraus(rng, rng.below(2) == 0);
    // Moves rank-deficient draws off the PSD boundary in either direction.
    m.shift = (rng.below(2) == 0 ? 1 : -1) * (1e-3 + 0.1 * rng.uniform());
    const double choi_min = oracle::min_eig(oracle::choi(m, m.k, m.n));
    if (std::abs(choi_min) < 1e-6) {
      ++skipped;
      continue;
    }
    const OperatorCpMap tau = as_operator_map(m);
    const bool verdict = verify_alpha_cp(tau, StarAutomorphism::identity(tau.domain)).verdict;
    agree += verdict == (choi_min > 0);
    cp += choi_min > 0;
    ++i;
  }
  o.pass = agree == 100;
  o.detail = std::to_string(agree) + "/100 agree (" + std::to_string(cp) + " CP, " + std::to_string(100 - cp) +
             " not CP, " + std::to_string(skipped) + " near-boundary draws skipped)";
  return o;
}

Outcome taumap_factorization() {
  Outcome o;
  int ok = 0;
  double fac = 0, coiso = 0, pim = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceSizes sizes = InstanceSizes::level(1 + int(seed % 2));
    sizes.carrier_block = 1 + Index(seed % 3 == 2);
    const auto inst = generate_taumap_instance(seed % 2 ? Family::F2 : Family::F1, sizes, 500 + seed);
    const auto& tau = inst.base.tau;
    const KsgnsDilation d = construct_ksgns(tau, inst.base.alpha);
    const auto f = factorize_tau_map(inst.t_on_basis, *inst.e, inst.target, tau, inst.base.alpha, d);
    const Matrix& q = tau.carrier.module()->column_space();
    double a = 0, c = 0;
    for (std::size_t i = 0; i < inst.t_on_basis.size(); ++i) {
      a = std::max(a, ((inst.t_on_basis[i] - f.w.adjoint() * f.psi_on_basis[i] * d.v) * q).norm());
      for (std::size_t j = 0; j < inst.t_on_basis.size(); ++j) {
        const Matrix ip = inst.e->basis()[i].adjoint() * inst.e->basis()[j];
        const Matrix lhs = f.psi_on_basis[i].adjoint() * f.psi_on_basis[j];
        c = std::max(c, (lhs - combine(d.pi0, coords_of(ip, inst.e->algebra()))).norm());
      }
    }
    const double b = (f.w * f.w.adjoint() - Matrix::Identity(f.w.rows(), f.w.rows())).norm();
    fac = std::max(fac, a);
    coiso = std::max(coiso, b);
    pim = std::max(pim, c);
    ok += a <= 1e-8 && b <= 1e-10 && c <= 1e-8 && f.certificate.pass();
  }
  o.pass = ok == 30;
  o.detail = std::to_string(ok) + "/30 factorization=" + fmt("%.3g", fac) + " coisometry=" + fmt("%.3g", coiso) +
             " pi_map=" + fmt("%.3g", pim);
  return o;
}

std::vector<KernelInstance> kernel_corpus() {
  std::vector<KernelInstance> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Family fam = seed % 2 ? Family::F2 : Family::F1;
    KernelSizes s;
    s.omega = 1 + Index(seed % 4);
    s.second_block = fam == Family::F2 ? 2 : Index(seed / 2 % 3);
    s.target_block = 1 + Index(seed / 3 % 2);
    s.multiplicity = 1 + Index(seed / 5 % 2);
    out.push_back(generate_kernel_instance(fam, s, 300 + seed));
  }
  return out;
}

Outcome kernel_side() {
  Outcome o;
  int ok = 0, ids = 0;
  double fact = 0, rederive = 0, nu = 0, unit = 0;
  bool sizes_ok = true;
  for (const auto& inst : kernel_corpus()) {
    const Kernel& k = inst.kernel;
    sizes_ok = sizes_ok && k.size() <= 4 && k.source.dim() <= 8 && k.target.dim() <= 4;
    const auto c = construct_correspondence(k, inst.alpha);
    const bool repro = verify_reproducing(c, k, inst.alpha).pass();
    const double f = verify_kfamily_factorization(*inst.family, c, inst.alpha).value("factorization_identity");
    // ⟨k_σ, π(b_p) k_σ′⟩ against the input values.
    double rd = 0;
    const Index dim = k.source.dim();
    for (Index s = 0; s < k.size(); ++s)
      for (Index s2 = 0; s2 < k.size(); ++s2)
        for (Index p = 0; p < dim; ++p) {
          const Matrix v = c.kernel_elements[std::size_t(s)].adjoint() * c.pi_on_basis[std::size_t(p)] *
                           c.kernel_elements[std::size_t(s2)];
          rd = std::max(rd, (v - k.values[std::size_t((s * k.size() + s2) * dim + p)]).norm());
        }
    bool good = repro && f <= 1e-8 && rd <= 1e-9;
    if (inst.alpha.is_identity()) {
      ++ids;
      const double n = nu_isometry_check(*inst.family, c, inst.alpha).value("nu_gram_difference");
      const double u = (c.u - Matrix::Identity(c.hf_dim, c.hf_dim)).norm();
      nu = std::max(nu, n);
      unit = std::max(unit, u);
      good = good && n <= 1e-9 && u <= 1e-10;
    }
    fact = std::max(fact, f);
    rederive = std::max(rederive, rd);
    ok += good;
  }
  o.pass = ok == 50 && sizes_ok;
  o.detail = std::to_string(ok) + "/50 factorization=" + fmt("%.3g", fact) + " rederive=" + fmt("%.3g", rederive) +
             " nu=" + fmt("%.3g", nu) + " u_minus_i=" + fmt("%.3g", unit) + " (" + std::to_string(ids) +
             " with α = id)";
  return o;
}

Outcome domination_constants() {
  Outcome o;
  int checked = 0, bad = 0;
  double unit_err = 0, two_err = 0, ratio = 0;
  Rng rng(88);
  auto check = [&](std::optional<double> m1, std::optional<double> m2) {
    if (!m1 || !m2) {
      ++bad;
      return;
    }
    unit_err = std::max(unit_err, std::abs(*m1 - 1));
    two_err = std::max(two_err, std::abs(*m2 - 4));
    bad += std::abs(*m1 - 1) > 1e-10 || std::abs(*m2 - 4) > 1e-8;
    ++checked;
  };
  for (const auto& inst : ksgns_corpus()) {
    const auto cert = verify_alpha_cp(inst.tau, inst.alpha);
    if (!cert.verdict) continue;
    bad += !cert.lemma_domination_M || !std::isfinite(*cert.lemma_domination_M);
    const auto one = AlgebraElement::identity(inst.tau.domain);
    check(minimal_domination_constant(inst.tau, inst.alpha, one),
          minimal_domination_constant(inst.tau, inst.alpha, Complex(2) * one));
  }
  for (const auto& inst : kernel_corpus()) {
    if (!verify_alpha_cpd(inst.kernel, inst.alpha).verdict) continue;
    const auto one = AlgebraElement::identity(inst.kernel.source);
    check(kernel_domination_constant(inst.kernel, inst.alpha, one),
          kernel_domination_constant(inst.kernel, inst.alpha, Complex(2) * one));
    for (int i = 0; i < 3; ++i) {
      const auto b = AlgebraElement::from_coords(inst.kernel.source, rng.matrix(inst.kernel.source.dim(), 1));
      const auto m = kernel_domination_constant(inst.kernel, inst.alpha, b);
      const double norm2 = std::pow(op_norm(b.embed()), 2);
      if (!m || *m > norm2 * (1 + 1e-8)) ++bad;
      if (m) ratio = std::max(ratio, *m / norm2);
    }
  }
  o.pass = bad == 0 && checked > 0;
  o.detail = std::to_string(checked) + " passing instances, " + std::to_string(bad) + " violations; |M(1)-1|=" +
             fmt("%.3g", unit_err) + " |M(2)-4|=" + fmt("%.3g", two_err) + " max M(b)/|b|^2=" + fmt("%.12g", ratio);
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_command(args, out, err);
  return out.str();
}

Outcome determinism() {
  const std::string dir = SMOD_GOLDEN_DIR;
  std::map<std::string, std::string> digests;
  {
    std::istringstream sums(slurp(dir + "/SHA256SUMS"));
    std::string digest, file;
    while (sums >> digest >> file) digests[file] = digest;
  }
  std::istringstream manifest(slurp(dir + "/manifest.txt"));
  Outcome o;
  int entries = 0, ok = 0;
  for (std::string line; std::getline(manifest, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    std::string name, kind, family, seed, size, command;
    f >> name >> kind >> family >> seed >> size >> command;
    ++entries;
    const std::string path = dir + "/" + name + ".json";
    const std::string inst = capture({"generate", "--kind", kind, "--family", family, "--seed", seed, "--size", size});
    const std::string cert = capture({command, path});
    ok += inst == slurp(path) && cert == slurp(dir + "/" + name + ".cert.json") && cert == capture({command, path}) &&
          sha256_hex(inst) == digests[name + ".json"] && sha256_hex(cert) == digests[name + ".cert.json"];
  }
  o.pass = entries > 0 && ok == entries;
  o.detail = std::to_string(ok) + "/" + std::to_string(entries) + " golden entries byte-identical and hash-stable";
  return o;
}

}  // namespace
}  // namespace smod

int main() {
  using namespace smod;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"ksgns_round_trip", ksgns_round_trip},
      {"stinespring_oracle_agreement", stinespring_agreement},
      {"verifier_soundness_fixtures", soundness_fixtures},
      {"verifier_oracle_agreement", verdict_agreement},
      {"taumap_factorization", taumap_factorization},
      {"kernel_side", kernel_side},
      {"domination_constants", domination_constants},
      {"golden_determinism", determinism},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
