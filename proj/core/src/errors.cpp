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

#include "xyzlind/errors.hpp"

namespace xyzlind {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidGeometry: return "invalid-geometry";
        case ErrorKind::Size: return "size";
        case ErrorKind::Index: return "index";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::SpectralSize: return "spectral-size";
        case ErrorKind::NoSteadyState: return "no-steady-state";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::StepSize: return "step-size";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::FitOscillation: return "fit-oscillation";
        case ErrorKind::FitWindow: return "fit-window";
        case ErrorKind::EmptyWindow: return "empty-window";
        case ErrorKind::UndefinedBimodality: return "undefined-bimodality";
        case ErrorKind::InternalConsistency: return "internal-consistency";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
      kind_(kind),
      message_(message) {}

bool Error::is_numerical() const noexcept {
    switch (kind_) {
        case ErrorKind::InvalidGeometry:
        case ErrorKind::Size:
        case ErrorKind::Index:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::SpectralSize:
        case ErrorKind::Config:
            return false;
        default:
            return true;
    }
}

}  // namespace xyzlind
