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

#include "smod/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace smod {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

[[noreturn]] void shape(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ShapeError, path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Index integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<Index>();
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema(path, "expected [re, im]");
  return {real_from_json(j[0], at(path, 0)), real_from_json(j[1], at(path, 1))};
}

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

std::vector<Matrix> matrices_from_json(const Json& j, const std::string& path) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(matrix_from_json(j[i], at(path, i)));
  return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

void expect_shape(const Matrix& m, Index rows, Index cols, const std::string& path) {
  // A 0-row matrix is written as [] and reads back as 0×0.
  if (m.rows() == 0 && rows == 0) return;
  if (m.rows() != rows || m.cols() != cols) {
    shape(path, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

Matrix sized(Matrix m, Index rows, Index cols) {
  if (m.rows() == 0) return Matrix::Zero(rows, cols);
  return m;
}

// Library errors raised while assembling an object graph are reported
// against the path being built.
template <typename F>
auto build(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::SchemaError || err.kind() == ErrorKind::ShapeError) throw;
    if (err.kind() == ErrorKind::DimensionMismatch) throw Error(ErrorKind::ShapeError, path + ": " + err.what());
    throw Error(ErrorKind::SchemaError, path + ": " + err.what(), err.value());
  }
}

BlockAlgebra algebra_from_json(const Json& j, const std::string& path) {
  const Json& blocks = array(field(j, "blocks", path), path + ".blocks");
  std::vector<Index> dims;
  for (std::size_t i = 0; i < blocks.size(); ++i) dims.push_back(integer(blocks[i], at(path + ".blocks", i)));
  return build(path, [&] { return BlockAlgebra(dims); });
}

StarAutomorphism automorphism_from_json(const Json& j, const BlockAlgebra& a, const std::string& path) {
  const Json& perm = array(field(j, "perm", path), path + ".perm");
  std::vector<Index> p;
  for (std::size_t i = 0; i < perm.size(); ++i) p.push_back(integer(perm[i], at(path + ".perm", i)));
  auto us = matrices_from_json(field(j, "unitaries", path), path + ".unitaries");
  return build(path, [&] { return StarAutomorphism(a, p, us); });
}

ConcreteModule module_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  const BlockAlgebra a = algebra_from_json(field(j, "algebra", path), path + ".algebra");
  const Index rows = integer(field(j, "ambient_rows", path), path + ".ambient_rows");
  if (rows < 0) schema(path + ".ambient_rows", "must be non-negative");
  auto basis = matrices_from_json(field(j, "basis", path), path + ".basis");
  for (std::size_t k = 0; k < basis.size(); ++k) {
    expect_shape(basis[k], rows, a.ambient_dim(), at(path + ".basis", k));
    basis[k] = sized(std::move(basis[k]), rows, a.ambient_dim());
  }
  return build(path, [&] { return ConcreteModule(a, rows, basis, tol); });
}

SModule smodule_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  auto e = share(module_from_json(field(j, "module", path), path + ".module", tol));
  const Index m = e->ambient_rows();
  Matrix u = Matrix::Identity(m, m);
  if (const Json* uj = optional_field(j, "u")) {
    u = matrix_from_json(*uj, path + ".u");
    expect_shape(u, m, m, path + ".u");
    u = sized(std::move(u), m, m);
  }
  return build(path, [&] { return SModule(e, u, tol); });
}

Tolerances tolerances_from_json(const Json& j, const std::string& path) {
  Tolerances tol;
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const double x = real_from_json(value, path + "." + key);
    if (key == "psd_tol") {
      tol.psd_tol = x;
    } else if (key == "rank_tol") {
      tol.rank_tol = x;
    } else if (key == "residual_tol") {
      tol.residual_tol = x;
    } else {
      schema(path + "." + key, "unknown tolerance");
    }
  }
  build(path, [&] {
    tol.validate();
    return 0;
  });
  return tol;
}

std::vector<Matrix> on_basis(const Json& j, const std::string& path) {
  return matrices_from_json(field(j, "on_basis", path), path + ".on_basis");
}

Json on_basis_to_json(const std::vector<Matrix>& ms) { return Json{{"on_basis", matrices_to_json(ms)}}; }

}  // namespace

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "alphacp") return InstanceKind::AlphaCp;
  if (name == "taumap") return InstanceKind::TauMap;
  if (name == "kernel") return InstanceKind::Kernel;
  if (name == "kfamily") return InstanceKind::KFamily;
  throw Error(ErrorKind::InvalidArgument, "unknown kind '" + name + "' (expected alphacp, taumap, kernel or kfamily)");
}

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::AlphaCp: return "alphacp";
    case InstanceKind::TauMap: return "taumap";
    case InstanceKind::Kernel: return "kernel";
    case InstanceKind::KFamily: return "kfamily";
  }
  return "?";
}

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  schema(path, "expected a number");
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) return Matrix(0, 0);
  const Json& first = array(j[0], at(path, 0));
  Matrix m(Index(j.size()), Index(first.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = array(j[i], at(path, i));
    if (row.size() != first.size()) {
      shape(at(path, i), "ragged row of length " + std::to_string(row.size()) + ", expected " +
                             std::to_string(first.size()));
    }
    for (std::size_t k = 0; k < row.size(); ++k) m(Index(i), Index(k)) = complex_from_json(row[k], at(at(path, i), k));
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  array(j, path);
  Vector v(Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Index(i)) = complex_from_json(j[i], at(path, i));
  return v;
}

Json to_json(const BlockAlgebra& a) { return Json{{"blocks", a.block_dims()}}; }

Json to_json(const StarAutomorphism& alpha) {
  return Json{{"perm", alpha.perm()}, {"unitaries", matrices_to_json(alpha.unitaries())}};
}

Json to_json(const ConcreteModule& e) {
  return Json{{"algebra", to_json(e.algebra())}, {"ambient_rows", e.ambient_rows()}, {"basis", matrices_to_json(e.basis())}};
}

Json to_json(const SModule& s) { return Json{{"module", to_json(*s.module())}, {"u", matrix_to_json(s.unitary())}}; }

Json to_json(const Tolerances& tol) {
  return Json{{"psd_tol", real_to_json(tol.psd_tol)},
              {"rank_tol", real_to_json(tol.rank_tol)},
              {"residual_tol", real_to_json(tol.residual_tol)}};
}

Json to_json(const Report& r) {
  Json values = Json::object();
  for (const auto& [name, v] : r.values()) values[name] = real_to_json(v);
  Json limits = Json::object();
  for (const auto& [name, c] : r.checks()) {
    limits[name] = Json{{"bound", c.upper ? "upper" : "lower"}, {"limit", real_to_json(c.limit)}};
  }
  return Json{{"residual_table", values}, {"limits", limits}};
}

Json instance_to_json(const InstanceFile& inst) {
  Json payload = Json::object();
  payload["alpha"] = to_json(*inst.alpha);
  switch (inst.kind) {
    case InstanceKind::TauMap:
      payload["e"] = to_json(*inst.e);
      payload["target"] = to_json(*inst.target);
      payload["t"] = on_basis_to_json(inst.t_on_basis);
      [[fallthrough]];
    case InstanceKind::AlphaCp:
      payload["algebra"] = to_json(inst.tau->domain);
      payload["carrier"] = to_json(inst.tau->carrier);
      payload["tau"] = on_basis_to_json(inst.tau->on_basis);
      break;
    case InstanceKind::KFamily: {
      payload["e"] = to_json(*inst.family->e);
      payload["f"] = to_json(*inst.family->f);
      Json maps = Json::array();
      for (const Matrix& m : inst.family->maps) {
        Json cols = Json::array();
        for (Index q = 0; q < m.cols(); ++q) cols.push_back(vector_to_json(m.col(q)));
        maps.push_back(Json{{"on_basis", cols}});
      }
      payload["maps"] = maps;
      [[fallthrough]];
    }
    case InstanceKind::Kernel: {
      const Kernel& k = *inst.kernel;
      payload["omega"] = k.omega;
      payload["source"] = to_json(k.source);
      payload["target"] = to_json(k.target);
      Json values = Json::array();
      for (Index s = 0; s < k.size(); ++s) {
        Json row = Json::array();
        for (Index s2 = 0; s2 < k.size(); ++s2) {
          Json cell = Json::array();
          for (Index p = 0; p < k.source.dim(); ++p) cell.push_back(matrix_to_json(k.value(s, s2, p)));
          row.push_back(std::move(cell));
        }
        values.push_back(std::move(row));
      }
      payload["values"] = values;
      break;
    }
  }
  Json out{{"version", kFormatVersion}, {"kind", to_string(inst.kind)}, {"payload", payload}};
  if (inst.tolerances) out["tolerances"] = to_json(*inst.tolerances);
  if (inst.generator) {
    const GeneratorInfo& g = *inst.generator;
    out["generator"] = Json{{"family", g.family}, {"seed", g.seed}, {"size", g.size}, {"label", g.label},
                            {"expected_pass", g.expected_pass}};
  }
  return out;
}

InstanceFile instance_from_json(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) schema(root, "expected an object");
  const std::string version = string(field(j, "version", root), "$.version");
  if (version != kFormatVersion) schema("$.version", "unsupported version '" + version + "'");
  for (const auto& [key, value] : j.items()) {
    if (key != "version" && key != "kind" && key != "payload" && key != "tolerances" && key != "generator") {
      schema("$." + key, "unknown field");
    }
  }

  InstanceFile inst;
  const std::string kind = string(field(j, "kind", root), "$.kind");
  try {
    inst.kind = parse_instance_kind(kind);
  } catch (const Error& err) {
    schema("$.kind", err.what());
  }
  if (const Json* t = optional_field(j, "tolerances")) inst.tolerances = tolerances_from_json(*t, "$.tolerances");
  if (const Json* g = optional_field(j, "generator")) {
    GeneratorInfo info;
    info.family = string(field(*g, "family", "$.generator"), "$.generator.family");
    const Json& seed = field(*g, "seed", "$.generator");
    if (!seed.is_number_unsigned()) schema("$.generator.seed", "expected a non-negative integer");
    info.seed = seed.get<std::uint64_t>();
    info.size = int(integer(field(*g, "size", "$.generator"), "$.generator.size"));
    info.label = string(field(*g, "label", "$.generator"), "$.generator.label");
    const Json& expected = field(*g, "expected_pass", "$.generator");
    if (!expected.is_boolean()) schema("$.generator.expected_pass", "expected a boolean");
    info.expected_pass = expected.get<bool>();
    inst.generator = info;
  }
  const Tolerances tol = inst.tolerances.value_or(Tolerances{});

  const std::string p = "$.payload";
  const Json& payload = field(j, "payload", root);
  if (!payload.is_object()) schema(p, "expected an object");

  if (inst.kind == InstanceKind::AlphaCp || inst.kind == InstanceKind::TauMap) {
    const BlockAlgebra a = algebra_from_json(field(payload, "algebra", p), p + ".algebra");
    inst.alpha = automorphism_from_json(field(payload, "alpha", p), a, p + ".alpha");
    SModule carrier = smodule_from_json(field(payload, "carrier", p), p + ".carrier", tol);
    auto values = on_basis(field(payload, "tau", p), p + ".tau");
    const Index m1 = carrier.module()->ambient_rows();
    if (Index(values.size()) != a.dim()) {
      shape(p + ".tau.on_basis", "expected " + std::to_string(a.dim()) + " matrices, one per basis element");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      expect_shape(values[k], m1, m1, at(p + ".tau.on_basis", k));
      values[k] = sized(std::move(values[k]), m1, m1);
    }
    inst.tau = OperatorCpMap{a, std::move(carrier), std::move(values)};
    build(p + ".tau", [&] {
      inst.tau->check_shapes();
      return 0;
    });

    if (inst.kind == InstanceKind::TauMap) {
      inst.e = share(module_from_json(field(payload, "e", p), p + ".e", tol));
      if (!(inst.e->algebra() == a)) schema(p + ".e.algebra", "E must be a module over the instance algebra");
      inst.target = smodule_from_json(field(payload, "target", p), p + ".target", tol);
      if (!(inst.target->module()->algebra() == inst.tau->carrier.module()->algebra())) {
        schema(p + ".target.module.algebra", "E₂ must be a module over the carrier algebra");
      }
      inst.t_on_basis = on_basis(field(payload, "t", p), p + ".t");
      if (Index(inst.t_on_basis.size()) != inst.e->dim()) {
        shape(p + ".t.on_basis", "expected " + std::to_string(inst.e->dim()) + " matrices, one per E basis element");
      }
      const Index m2 = inst.target->module()->ambient_rows();
      for (std::size_t k = 0; k < inst.t_on_basis.size(); ++k) {
        expect_shape(inst.t_on_basis[k], m2, m1, at(p + ".t.on_basis", k));
        inst.t_on_basis[k] = sized(std::move(inst.t_on_basis[k]), m2, m1);
      }
    }
    return inst;
  }

  std::vector<std::string> names;
  const Json& omega = array(field(payload, "omega", p), p + ".omega");
  for (std::size_t i = 0; i < omega.size(); ++i) names.push_back(string(omega[i], at(p + ".omega", i)));
  if (names.empty()) shape(p + ".omega", "Ω must be non-empty");
  if (Index(names.size()) > kMaxOmega) {
    throw Error(ErrorKind::SizeCapExceeded, p + ".omega: |Ω| exceeds " + std::to_string(kMaxOmega));
  }
  Kernel k{std::move(names), algebra_from_json(field(payload, "source", p), p + ".source"),
           algebra_from_json(field(payload, "target", p), p + ".target"), {}};
  inst.alpha = automorphism_from_json(field(payload, "alpha", p), k.source, p + ".alpha");
  const Index r = k.target.ambient_dim();
  const std::string vp = p + ".values";
  const Json& values = array(field(payload, "values", p), vp);
  if (Index(values.size()) != k.size()) shape(vp, "expected one row per σ");
  for (std::size_t s = 0; s < values.size(); ++s) {
    const Json& row = array(values[s], at(vp, s));
    if (Index(row.size()) != k.size()) shape(at(vp, s), "expected one entry per σ′");
    for (std::size_t s2 = 0; s2 < row.size(); ++s2) {
      const std::string cp = at(at(vp, s), s2);
      auto cell = matrices_from_json(row[s2], cp);
      if (Index(cell.size()) != k.source.dim()) shape(cp, "expected one matrix per basis element of ℬ");
      for (std::size_t q = 0; q < cell.size(); ++q) {
        expect_shape(cell[q], r, r, at(cp, q));
        k.values.push_back(sized(std::move(cell[q]), r, r));
      }
    }
  }
  build(vp, [&] {
    k.check_shapes(tol);
    return 0;
  });

  if (inst.kind == InstanceKind::KFamily) {
    auto e = share(module_from_json(field(payload, "e", p), p + ".e", tol));
    auto f = share(module_from_json(field(payload, "f", p), p + ".f", tol));
    if (!(e->algebra() == k.source)) schema(p + ".e.algebra", "E must be a module over ℬ");
    if (!(f->algebra() == k.target)) schema(p + ".f.algebra", "F must be a module over 𝒞");
    const Json& maps = array(field(payload, "maps", p), p + ".maps");
    if (Index(maps.size()) != k.size()) shape(p + ".maps", "expected one map per σ");
    std::vector<Matrix> ms;
    for (std::size_t s = 0; s < maps.size(); ++s) {
      const std::string mp = at(p + ".maps", s) + ".on_basis";
      const Json& cols = array(field(maps[s], "on_basis", at(p + ".maps", s)), mp);
      if (Index(cols.size()) != e->dim()) shape(mp, "expected one coordinate vector per E basis element");
      Matrix m(f->dim(), e->dim());
      for (std::size_t q = 0; q < cols.size(); ++q) {
        const Vector v = vector_from_json(cols[q], at(mp, q));
        if (v.size() != f->dim()) shape(at(mp, q), "expected " + std::to_string(f->dim()) + " coordinates");
        m.col(Index(q)) = v;
      }
      ms.push_back(std::move(m));
    }
    inst.e = e;
    inst.family = KFamily{k, std::move(e), std::move(f), std::move(ms)};
  }
  inst.kernel = std::move(k);
  return inst;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& err) {
    throw Error(ErrorKind::ParseError, "at byte " + std::to_string(err.byte) + ": " + err.what(), double(err.byte));
  }
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  return instance_from_json(parse_json(text));
}

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::IoError, "SHA-256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string instance_digest(const InstanceFile& inst) { return sha256_hex(canonical_text(instance_to_json(inst))); }

Json dilation_to_json(const KsgnsDilation& d) {
  return Json{{"h0_dim", d.h0_dim},
              {"e0", to_json(*d.e0)},
              {"u0", matrix_to_json(d.u0)},
              {"pi0", matrices_to_json(d.pi0)},
              {"v", matrix_to_json(d.v)}};
}

KsgnsDilation dilation_from_json(const Json& j, const BlockAlgebra& carrier_algebra, const Tolerances& tol) {
  const std::string p = "$.dilation";
  KsgnsDilation d;
  d.h0_dim = integer(field(j, "h0_dim", p), p + ".h0_dim");
  d.e0 = share(module_from_json(field(j, "e0", p), p + ".e0", tol));
  if (!(d.e0->algebra() == carrier_algebra)) schema(p + ".e0.algebra", "E₀ must be a module over the carrier algebra");
  if (d.e0->ambient_rows() != d.h0_dim) shape(p + ".e0.ambient_rows", "must equal h0_dim");
  d.u0 = sized(matrix_from_json(field(j, "u0", p), p + ".u0"), d.h0_dim, d.h0_dim);
  expect_shape(d.u0, d.h0_dim, d.h0_dim, p + ".u0");
  d.pi0 = matrices_from_json(field(j, "pi0", p), p + ".pi0");
  for (std::size_t s = 0; s < d.pi0.size(); ++s) {
    d.pi0[s] = sized(std::move(d.pi0[s]), d.h0_dim, d.h0_dim);
    expect_shape(d.pi0[s], d.h0_dim, d.h0_dim, at(p + ".pi0", s));
  }
  d.v = matrix_from_json(field(j, "v", p), p + ".v");
  if (d.v.rows() != d.h0_dim && !(d.h0_dim == 0 && d.v.rows() == 0)) shape(p + ".v", "must have h0_dim rows");
  return d;
}

Json factorization_to_json(const TauMapFactorization& f) {
  return Json{{"e4", to_json(*f.e4)}, {"w", matrix_to_json(f.w)}, {"psi_on_basis", matrices_to_json(f.psi_on_basis)}};
}

Json correspondence_to_json(const RksCorrespondence& c) {
  return Json{{"hf_dim", c.hf_dim},
              {"generators", matrix_to_json(c.generators)},
              {"fmodule", to_json(*c.fmodule)},
              {"u", matrix_to_json(c.u)},
              {"pi_on_basis", matrices_to_json(c.pi_on_basis)},
              {"kernel_elements", matrices_to_json(c.kernel_elements)}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Error(ErrorKind::IoError, "cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
}

}  // namespace smod
