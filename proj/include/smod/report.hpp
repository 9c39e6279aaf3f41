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

#ifndef SMOD_REPORT_HPP_
#define SMOD_REPORT_HPP_

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace smod {

/// A named table of measured quantities with the checks that decide a
/// verdict. Values recorded with `note` are informational only.
class Report {
 public:
  struct Check {
    double value = 0;
    double limit = 0;
    bool upper = true;  // value must be <= limit, otherwise >= limit
    bool ok() const { return upper ? value <= limit : value >= limit; }
  };

  void require_at_most(const std::string& name, double value, double limit) {
    checks_[name] = Check{value, limit, true};
    values_[name] = value;
  }
  void require_at_least(const std::string& name, double value, double limit) {
    checks_[name] = Check{value, limit, false};
    values_[name] = value;
  }
  void note(const std::string& name, double value) { values_[name] = value; }

  // NaN residuals always fail.
  bool pass() const {
    for (const auto& [name, c] : checks_) {
      if (std::isnan(c.value) || !c.ok()) return false;
    }
    return true;
  }

  const std::map<std::string, double>& values() const { return values_; }
  const std::map<std::string, Check>& checks() const { return checks_; }

  double value(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
  }
  bool has(const std::string& name) const { return values_.count(name) != 0; }

  /// The failing check that misses its limit by the largest relative margin,
  /// or the check closest to its limit when everything passes.
  std::string worst() const {
    std::string name;
    double best = -std::numeric_limits<double>::infinity();
    bool best_failed = false;
    for (const auto& [key, c] : checks_) {
      const bool failed = std::isnan(c.value) || !c.ok();
      double score;
      if (std::isnan(c.value)) {
        score = std::numeric_limits<double>::infinity();
      } else if (c.upper) {
        score = c.limit > 0 ? c.value / c.limit : c.value;
      } else {
        score = c.limit != 0 ? (c.limit - c.value) / std::abs(c.limit) : c.limit - c.value;
      }
      if (failed && !best_failed) {
        best_failed = true;
        best = score;
        name = key;
      } else if (failed == best_failed && score > best) {
        best = score;
        name = key;
      }
    }
    return name;
  }

  /// Merge another report under a prefix ("prefix.name").
  void absorb(const std::string& prefix, const Report& other) {
    for (const auto& [k, v] : other.values_) values_[prefix + "." + k] = v;
    for (const auto& [k, c] : other.checks_) checks_[prefix + "." + k] = c;
  }

 private:
  std::map<std::string, double> values_;
  std::map<std::string, Check> checks_;
};

}  // namespace smod

#endif  // SMOD_REPORT_HPP_
