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
#include <vector>

#include <Eigen/SparseCore>

#include "xyzlind/lattice.hpp"
#include "xyzlind/types.hpp"

namespace xyzlind {

// Coupling constants in units where hbar = 1; gamma is the spin-flip rate.
struct Couplings {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
    double gamma = 1.0;

    // Throws Config error on negative gamma or non-finite values.
    void validate() const;

    friend bool operator==(const Couplings&, const Couplings&) = default;
};

enum class Axis { X, Y, Z, Plus, Minus };

std::string_view to_string(Axis axis) noexcept;

struct PauliFactor {
    int site = 0;
    Axis axis = Axis::X;
};

/// Product of single-site Pauli or ladder operators with a complex prefactor.
///
/// Factors act on distinct sites, so their order does not matter. Conventions:
/// sigma^z|up> = |up>, sigma^-|up> = |down>, sigma^y = i(sigma^- - sigma^+),
/// which gives sigma^y|up> = i|down> and sigma^y|down> = -i|up>.
class PauliString {
public:
    PauliString() = default;
    PauliString(Complex coefficient, std::vector<PauliFactor> factors);

    Complex coefficient() const noexcept { return coefficient_; }
    const std::vector<PauliFactor>& factors() const noexcept { return factors_; }

    // Throws Index error if a site is >= n_sites or appears twice.
    void validate(int n_sites) const;

    // Image of a basis state: returns the amplitude factor and writes the target
    // index; a zero factor means the state is annihilated.
    Complex map_basis(BasisIndex x, BasisIndex& target) const noexcept;

private:
    Complex coefficient_{1.0, 0.0};
    std::vector<PauliFactor> factors_;
};

/// Sparse complex operator on a 2^N (or 4^N superoperator) dimensional space.
///
/// Backed by a row-major compressed Eigen matrix; the dense export is row-major
/// with entry (r, c) at r * dim + c.
class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, std::int64_t>;

    SparseOperator() = default;
    explicit SparseOperator(Matrix m);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    Eigen::Index nonzeros() const noexcept { return m_.nonZeros(); }
    const Matrix& matrix() const noexcept { return m_; }

    StateVector apply(const StateVector& v) const;
    DenseMatrix to_dense() const { return DenseMatrix(m_); }
    SparseOperator adjoint() const;

    // Largest |A - A^dagger| entry.
    double hermiticity_defect() const;

private:
    Matrix m_;
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(Complex s, const SparseOperator& a);

SparseOperator identity_operator(int n_sites);

SparseOperator pauli_matrix(int site, Axis axis, int n_sites);

SparseOperator pauli_string_matrix(const PauliString& ps, int n_sites);

// sum over bonds of jx XX + jy YY + jz ZZ, weighted by bond multiplicity.
SparseOperator build_hamiltonian(const LatticeGeometry& geom, const Couplings& c,
                                 int max_sites = kDefaultMaxSites);

// H - (i gamma / 2) sum_j sigma^+_j sigma^-_j.
SparseOperator build_effective_hamiltonian(const SparseOperator& h, const Couplings& c, int n_sites);

// U = prod_j sigma^z_j, the pi rotation about z. Diagonal with entries (-1)^(down spins).
SparseOperator z2_operator(int n_sites);

// Parity of a basis state under z2_operator: +1 or -1.
inline int z2_parity(BasisIndex x, int n_sites) noexcept {
    const int downs = n_sites - __builtin_popcountll(x);
    return (downs & 1) ? -1 : 1;
}

// (1/N) sum_i sigma^alpha_i.
SparseOperator magnetization_operator(Axis axis, int n_sites);

// Matrix-free application; never materialises the operator.
StateVector apply_pauli_string(const PauliString& ps, const StateVector& state, int n_sites);

int sites_from_dim(Eigen::Index dim);

namespace kernels {

// out = sigma^-_site in
void apply_lowering(int site, const StateVector& in, StateVector& out);

// <psi|sigma^x_site|psi> for a normalised psi.
double expect_sigma_x(int site, const StateVector& psi);

// <psi|sigma^z_site|psi>.
double expect_sigma_z(int site, const StateVector& psi);

// <psi|sigma^+_site sigma^-_site|psi>, the up-spin population.
double up_population(int site, const StateVector& psi);

}  // namespace kernels

}  // namespace xyzlind
