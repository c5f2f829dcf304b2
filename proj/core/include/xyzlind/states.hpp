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

#include <string_view>

#include "xyzlind/operators.hpp"
#include "xyzlind/types.hpp"

namespace xyzlind {

// Trajectory state |psi>, amplitudes indexed by basis state.
struct PureState {
    int n_sites = 0;
    StateVector amplitudes;

    double norm() const { return amplitudes.norm(); }
};

/// Mixed state rho on 2^N dimensions.
///
/// Expected to be Hermitian with unit trace; check() reports the worst violation
/// of each invariant, and validate() throws when they exceed the given tolerances.
struct DensityMatrix {
    int n_sites = 0;
    DenseMatrix matrix;

    struct Diagnostics {
        double hermiticity = 0.0;      // max |rho - rho^dagger|
        double trace_error = 0.0;      // |Tr rho - 1|
        double min_eigenvalue = 0.0;   // smallest eigenvalue of the Hermitian part
    };

    Diagnostics check(bool with_spectrum = true) const;
    void validate(double herm_tol = 1e-10, double trace_tol = 1e-10, double pos_tol = 1e-8) const;

    static DensityMatrix from_pure(const PureState& psi);
};

enum class Direction { PlusX, MinusX, PlusY, MinusY, PlusZ, MinusZ };

std::string_view to_string(Direction d) noexcept;
Direction parse_direction(std::string_view text);

// Every spin polarised along `direction`.
PureState product_pure_state(int n_sites, Direction direction);
DensityMatrix product_state(int n_sites, Direction direction);

// Tr(rho op).
Complex expectation(const DensityMatrix& rho, const SparseOperator& op);
Complex expectation(const DensityMatrix& rho, const PauliString& ps);

// <psi|op|psi> for a normalised psi.
Complex expectation(const PureState& psi, const SparseOperator& op);

}  // namespace xyzlind
