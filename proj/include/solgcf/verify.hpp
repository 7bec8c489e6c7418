// Copyright 2026 The solgcf Authors
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


#ifndef SOLGCF_VERIFY_HPP
#define SOLGCF_VERIFY_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace solgcf::verify {

struct CheckResult {
  bool pass = false;
  // Largest deviation from the reference value. For nonexistence checks
  // this is the shortfall below the refutation margin (0 when refuted).
  double max_error = 0.0;
  std::string note;
};

// Ordered by name, so iteration (and the JSON report) is deterministic.
using Report = std::map<std::string, CheckResult>;

struct Check {
  std::string name;
  std::function<CheckResult()> run;
};

const std::vector<Check>& checks();

// Runs every check, concurrently when `parallel` is set. A check that throws
// is reported as failing with the exception text in the note.
Report run_all(bool parallel = true);

bool all_pass(const Report& r);
const char* version();
// {"version": ..., "checks": {name: {"pass": bool, "max_error": number}}}
std::string report_json(const Report& r);

}  // namespace solgcf::verify

#endif  // SOLGCF_VERIFY_HPP
