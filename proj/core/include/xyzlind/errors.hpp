// Copyright 2026 The xyzlind Authors
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
#include <string_view>

namespace xyzlind {

enum class ErrorKind {
    InvalidGeometry,
    Size,
    Index,
    DimensionMismatch,
    SpectralSize,
    NoSteadyState,
    Convergence,
    StepSize,
    Divergence,
    FitOscillation,
    FitWindow,
    EmptyWindow,
    UndefinedBimodality,
    InternalConsistency,
    Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; the kind selects the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    // The message without the "<kind> error: " prefix carried by what().
    const std::string& message() const noexcept { return message_; }

    // Everything except configuration/geometry/usage errors.
    bool is_numerical() const noexcept;

private:
    ErrorKind kind_;
    std::string message_;
};

}  // namespace xyzlind
