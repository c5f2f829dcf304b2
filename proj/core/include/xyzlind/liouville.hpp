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

#include <cstddef>
#include <string>
#include <vector>

#include "xyzlind/operators.hpp"
#include "xyzlind/states.hpp"

namespace xyzlind {

// Superoperator dimension limit for build_liouvillian: 4^7.
inline constexpr Eigen::Index kDefaultSpectralMaxDim = Eigen::Index{1} << 14;
// Dense diagonalisation limit: 4^6.
inline constexpr Eigen::Index kDefaultDenseEigMaxDim = 4096;

// Column-stacking index of rho(row, col) for a D-dimensional Hilbert space.
inline Eigen::Index vec_index(Eigen::Index row, Eigen::Index col, Eigen::Index d) noexcept {
    return row + col * d;
}

/// Vectorised Lindblad generator with column stacking, vec(A X B) = (B^T (x) A) vec(X):
///   L = -i (I (x) H - H^T (x) I)
///       + gamma sum_j [ conj(s-_j) (x) s-_j - 1/2 (I (x) n_j + n_j^T (x) I) ],
/// with n_j = s+_j s-_j.
SparseOperator build_liouvillian(const SparseOperator& h, const Couplings& c, int n_sites,
                                 Eigen::Index max_dim = kDefaultSpectralMaxDim);

struct SpectrumOptions {
    double zero_tol = 1e-9;  // absolute; use for_rate() to scale by gamma
    Eigen::Index max_dense_dim = kDefaultDenseEigMaxDim;
    bool compute_modes = true;

    static SpectrumOptions for_rate(double gamma);
};

struct LiouvillianSpectrum {
    std::vector<Complex> eigenvalues;
    std::vector<int> parity;  // +1 / -1 under the vectorised Z2 conjugation

    DensityMatrix steady_state;
    Complex steady_eigenvalue{};

    // Eigenmode of the slowest non-steady eigenvalue, reshaped to a 2^N matrix.
    DenseMatrix slow_mode;
    Complex slow_eigenvalue{};
    int slow_parity = 0;

    double gap = 0.0;      // min |Re lambda| over non-steady eigenvalues
    double odd_gap = 0.0;  // same, restricted to the Z2-odd sector

    // Set when several eigenvalues sit within zero_tol of 0.
    bool degenerate_steady_state = false;
    // Populated when the gap is below 10 zero_tol and steady/slow cannot be told apart.
    std::vector<Complex> ambiguous_candidates;
    std::vector<std::string> warnings;
};

// All 4^N eigenvalues, diagonalising the even and odd Z2 sectors separately.
LiouvillianSpectrum full_spectrum(const SparseOperator& l, const SpectrumOptions& options = {});

struct SteadyStateOptions {
    double residual_tol = 1e-8;  // scaled by gamma
    double gamma = 1.0;
    Eigen::Index max_dim = Eigen::Index{1} << 16;
};

// Solves L[rho] = 0 with Tr rho = 1 by sparse LU.
DensityMatrix steady_state_direct(const SparseOperator& l, const SteadyStateOptions& options = {});

// Reshapes a column-stacked vector into a D x D matrix.
DenseMatrix unvec(const Eigen::Ref<const Eigen::VectorXcd>& v, Eigen::Index d);
Eigen::VectorXcd vec(const DenseMatrix& m);

}  // namespace xyzlind
