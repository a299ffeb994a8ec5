// Copyright 2026 The Shuffle RDP Authors
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
//
// Named invariant suites surfaced through the `verify` CLI subcommand.

#ifndef SHUFFLE_RDP_VERIFY_H_
#define SHUFFLE_RDP_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace shuffle_rdp {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> results;

  bool AllPass() const;
};

// Suites: gamma, sandwich, oracle, moments, mixture, monotonic.
const std::vector<std::string>& SuiteNames();

// Runs one suite (or every suite for "all").  Unknown names raise a
// PreconditionError.
std::vector<SuiteReport> RunSuites(const std::string& name,
                                   std::uint64_t seed);

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_VERIFY_H_
