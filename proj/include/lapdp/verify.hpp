// Copyright 2026 The lapdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lapdp {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Oracle-backed invariant suites behind the CLI `verify` command. The quick
// level trims the randomized sample counts; full includes the 1000-pair
// dominance property and the Bromwich round trips.
std::vector<CheckResult> run_verification(std::uint64_t seed, bool full);

}  // namespace lapdp
