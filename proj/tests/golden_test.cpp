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

// Replays tests/golden: every instance must regenerate byte for byte, every
// certificate must come back byte for byte, and both must hash to the
// recorded digests. Regenerate with tools/regen_golden.sh after an
// intentional format or numerics change.

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "smod/cli.hpp"
#include "smod/serialize.hpp"

namespace smod {
namespace {

const std::string kDir = SMOD_GOLDEN_DIR;

struct Entry {
  std::string name, kind, family, seed, size, command;
};

std::vector<Entry> manifest() {
  std::ifstream in(kDir + "/manifest.txt");
  std::vector<Entry> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    Entry e;
    fields >> e.name >> e.kind >> e.family >> e.seed >> e.size >> e.command;
    out.push_back(e);
  }
  return out;
}

std::map<std::string, std::string> recorded_digests() {
  std::ifstream in(kDir + "/SHA256SUMS");
  std::map<std::string, std::string> out;
  std::string digest, file;
  while (in >> digest >> file) out[file] = digest;
  return out;
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

TEST(Golden, CorpusIsNonEmpty) { EXPECT_GE(manifest().size(), 8u); }

TEST(Golden, InstancesAndCertificatesAreByteIdentical) {
  const auto digests = recorded_digests();
  for (const Entry& e : manifest()) {
    SCOPED_TRACE(e.name);
    const std::string inst_path = kDir + "/" + e.name + ".json";
    const std::string inst = slurp(inst_path);
    const std::string cert = slurp(kDir + "/" + e.name + ".cert.json");
    ASSERT_FALSE(inst.empty());
    ASSERT_FALSE(cert.empty());

    EXPECT_EQ(capture({"generate", "--kind", e.kind, "--family", e.family, "--seed", e.seed, "--size", e.size}), inst);
    const std::string first = capture({e.command, inst_path});
    EXPECT_EQ(first, cert);
    EXPECT_EQ(capture({e.command, inst_path}), first);

    EXPECT_EQ(sha256_hex(inst), digests.at(e.name + ".json"));
    EXPECT_EQ(sha256_hex(cert), digests.at(e.name + ".cert.json"));
    EXPECT_EQ(parse_json(cert)["instance_digest"], instance_digest(load_instance(inst_path)));
  }
}

}  // namespace
}  // namespace smod
