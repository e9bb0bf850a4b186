// Copyright 2026 The pqcreg developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pqcreg {

/// Broad failure categories; they map 1:1 onto the C API status codes.
enum class ErrorKind {
    InvalidArgument, ///< bad value passed to a library call
    Capacity,        ///< resource limit exceeded (e.g. qubit ceiling)
    Config,          ///< run configuration rejected before any compute
    Compute,         ///< failure while evaluating or optimizing
    Io,              ///< file read/write failure
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &msg)
        : std::runtime_error(msg), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace pqcreg
