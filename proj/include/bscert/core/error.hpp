// Copyright 2026 The bscert Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace bscert {

/// Shape or size of an argument is incompatible with the operation.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument values violate a precondition (photon totals, normalization, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Enumeration or oracle size guard tripped.
struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed file content. `line` is 1-based, 0 when not applicable.
struct ParseError : std::runtime_error {
    ParseError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};

}  // namespace bscert
