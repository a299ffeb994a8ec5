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

#ifndef SHUFFLE_RDP_ERRORS_H_
#define SHUFFLE_RDP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace shuffle_rdp {

// Thrown when a documented precondition of an operation is violated
// (domain errors, guard inequalities, enumeration budgets, misaligned
// composition grids).  The message names the violated condition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_ERRORS_H_
