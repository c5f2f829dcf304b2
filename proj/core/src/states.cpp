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

#include "xyzlind/states.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "xyzlind/errors.hpp"

namespace xyzlind {

DensityMatrix::Diagnostics DensityMatrix::check(bool with_spectrum) const {
    Diagnostics d;
    d.hermiticity = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(matrix.trace() - Complex(1.0));
    if (with_spectrum) {
        const DenseMatrix herm = 0.5 * (matrix + matrix.adjoint());
        Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
        d.min_eigenvalue = solver.eigenvalues().minCoeff();
    }
    return d;
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double pos_tol) const {
    const auto d = check(true);
    if (d.hermiticity > herm_tol) {
        throw Error(ErrorKind::InternalConsistency,
                    "density matrix not Hermitian: " + std::to_string(d.hermiticity));
    }
    if (d.trace_error > trace_tol) {
        throw Error(ErrorKind::InternalConsistency,
                    "density matrix trace off by " + std::to_string(d.trace_error));
    }
    if (d.min_eigenvalue < -pos_tol) {
        throw Error(ErrorKind::InternalConsistency,
                    "density matrix has eigenvalue " + std::to_string(d.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix{psi.n_sites, psi.amplitudes * psi.amplitudes.adjoint()};
}

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::PlusX: return "+x";
        case Direction::MinusX: return "-x";
        case Direction::PlusY: return "+y";
        case Direction::MinusY: return "-y";
        case Direction::PlusZ: return "+z";
        case Direction::MinusZ: return "-z";
    }
    return "?";
}

Direction parse_direction(std::string_view text) {
    for (auto d : {Direction::PlusX, Direction::MinusX, Direction::PlusY, Direction::MinusY,
                   Direction::PlusZ, Direction::MinusZ}) {
        if (text == to_string(d)) return d;
    }
    throw Error(ErrorKind::Config, "unknown direction '" + std::string(text) +
                                       "' (expected one of +x -x +y -y +z -z)");
}

PureState product_pure_state(int n_sites, Direction direction) {
    if (n_sites < 1 || n_sites > kDefaultMaxSites) {
        throw Error(ErrorKind::Size, "product state needs 1.." + std::to_string(kDefaultMaxSites) +
                                         " sites");
    }
    // Single-site amplitudes (down, up).
    const double r = 1.0 / std::sqrt(2.0);
    Complex down{}, up{};
    switch (direction) {
        case Direction::PlusX: down = r; up = r; break;
        case Direction::MinusX: down = -r; up = r; break;
        case Direction::PlusY: down = Complex(0.0, r); up = r; break;
        case Direction::MinusY: down = Complex(0.0, -r); up = r; break;
        case Direction::PlusZ: up = 1.0; break;
        case Direction::MinusZ: down = 1.0; break;
    }
    const BasisIndex dim = hilbert_dim(n_sites);
    PureState psi{n_sites, StateVector(dim)};
    for (BasisIndex x = 0; x < dim; ++x) {
        Complex a = 1.0;
        for (int s = 0; s < n_sites; ++s) a *= ((x >> s) & 1U) ? up : down;
        psi.amplitudes[x] = a;
    }
    return psi;
}

DensityMatrix product_state(int n_sites, Direction direction) {
    return DensityMatrix::from_pure(product_pure_state(n_sites, direction));
}

Complex expectation(const DensityMatrix& rho, const SparseOperator& op) {
    if (rho.matrix.rows() != op.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "density matrix vs operator dimension");
    }
    // Tr(rho O) = sum_{r,c} O[r,c] rho[c,r]
    Complex acc{};
    const auto& m = op.matrix();
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
            acc += it.value() * rho.matrix(it.col(), r);
        }
    }
    return acc;
}

Complex expectation(const DensityMatrix& rho, const PauliString& ps) {
    ps.validate(rho.n_sites);
    const auto dim = static_cast<BasisIndex>(rho.matrix.rows());
    Complex acc{};
    for (BasisIndex x = 0; x < dim; ++x) {
        BasisIndex y = 0;
        const Complex amp = ps.map_basis(x, y);
        if (amp != Complex{}) acc += amp * rho.matrix(x, y);
    }
    return acc;
}

Complex expectation(const PureState& psi, const SparseOperator& op) {
    return psi.amplitudes.dot(op.apply(psi.amplitudes));
}

}  // namespace xyzlind
