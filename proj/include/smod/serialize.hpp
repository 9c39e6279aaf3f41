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

// JSON instance files and certificates. See docs/format.md.
//
// Complex scalars are [re, im], matrices are nested row-major arrays and a
// 0-row matrix is written as []. Non-finite reals are written as the strings
// "inf", "-inf" and "nan". Object keys are sorted and doubles use the
// shortest decimal that round-trips, so write(read(x)) = x on canonical text.

#ifndef SMOD_SERIALIZE_HPP_
#define SMOD_SERIALIZE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "smod/cpdkernel.hpp"
#include "smod/ksgns.hpp"

namespace smod {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

enum class InstanceKind { AlphaCp, TauMap, Kernel, KFamily };

InstanceKind parse_instance_kind(const std::string& name);
const char* to_string(InstanceKind kind);

// Present on generated instances.
struct GeneratorInfo {
  std::string family;
  std::uint64_t seed = 0;
  int size = 1;
  std::string label;
  bool expected_pass = true;
};

/// One of four shapes, selected by kind. `alpha` is set for every kind; the
/// other members are set exactly when the kind uses them.
struct InstanceFile {
  InstanceKind kind = InstanceKind::AlphaCp;
  std::optional<Tolerances> tolerances;
  std::optional<GeneratorInfo> generator;

  std::optional<StarAutomorphism> alpha;
  std::optional<OperatorCpMap> tau;       // alphacp, taumap
  ModulePtr e;                            // taumap (over 𝒜), kfamily (over ℬ)
  std::optional<SModule> target;          // taumap
  std::vector<Matrix> t_on_basis;         // taumap
  std::optional<Kernel> kernel;           // kernel, kfamily
  std::optional<KFamily> family;          // kfamily
};

/// Reals, with non-finite values as strings.
Json real_to_json(double x);
double real_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const Matrix& m);
/// ShapeError naming `path` on ragged rows; SchemaError on non-numeric entries.
Matrix matrix_from_json(const Json& j, const std::string& path);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& path);

Json to_json(const BlockAlgebra& a);
Json to_json(const StarAutomorphism& alpha);
Json to_json(const ConcreteModule& e);
Json to_json(const SModule& s);
Json to_json(const Tolerances& tol);
Json to_json(const Report& r);

Json instance_to_json(const InstanceFile& inst);
/// Validates every reference and shape. Errors name the first offending
/// path element, as in "$.payload.tau.on_basis[2]".
InstanceFile instance_from_json(const Json& j);

/// ParseError carries the byte offset of the failure.
Json parse_json(std::string_view text);
InstanceFile load_instance(const std::string& path);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_text(const Json& j);
std::string sha256_hex(std::string_view bytes);
/// Digest of the canonical text of the instance as written by instance_to_json.
std::string instance_digest(const InstanceFile& inst);

Json dilation_to_json(const KsgnsDilation& d);
/// Rebuilds the stored matrices; the certificate comes back empty so that
/// verify_dilation can audit it.
KsgnsDilation dilation_from_json(const Json& j, const BlockAlgebra& carrier_algebra, const Tolerances& tol = {});
Json factorization_to_json(const TauMapFactorization& f);
Json correspondence_to_json(const RksCorrespondence& c);

/// Writes `text` to `path`, or to standard output when path is "-" or empty.
void write_text(const std::string& path, const std::string& text);

}  // namespace smod

#endif  // SMOD_SERIALIZE_HPP_
