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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace xyzlind {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

// Hilbert-space index: bit b of a basis-state integer is site b, bit value 1 is spin up.
using BasisIndex = std::uint64_t;

inline constexpr int kDefaultMaxSites = 16;

inline constexpr BasisIndex hilbert_dim(int n_sites) noexcept {
    return BasisIndex{1} << n_sites;
}

}  // namespace xyzlind
