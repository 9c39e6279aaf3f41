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

#ifndef SMOD_CLI_HPP_
#define SMOD_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace smod {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Runs one command line (without the program name). Certificates go to
/// `out` unless -o is given, diagnostics to `err`. With several FILE
/// arguments the instances are processed in order and the exit code is the
/// largest of the per-file codes.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smod

#endif  // SMOD_CLI_HPP_
