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

#include "xyzlind/operators.hpp"

#include <cmath>
#include <string>

#include "xyzlind/errors.hpp"

namespace xyzlind {

namespace {

using Triplet = Eigen::Triplet<Complex, std::int64_t>;

void check_sites(int n_sites, int max_sites) {
    if (n_sites < 1 || n_sites > max_sites) {
        throw Error(ErrorKind::Size, "number of sites " + std::to_string(n_sites) +
                                         " outside [1, " + std::to_string(max_sites) + "]");
    }
}

SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& triplets) {
    SparseOperator::Matrix m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return SparseOperator(std::move(m));
}

}  // namespace

void Couplings::validate() const {
    if (!std::isfinite(jx) || !std::isfinite(jy) || !std::isfinite(jz) || !std::isfinite(gamma)) {
        throw Error(ErrorKind::Config, "couplings must be finite");
    }
    if (gamma < 0.0) {
        throw Error(ErrorKind::Config, "gamma must be non-negative");
    }
}

std::string_view to_string(Axis axis) noexcept {
    switch (axis) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
        case Axis::Plus: return "+";
        case Axis::Minus: return "-";
    }
    return "?";
}

PauliString::PauliString(Complex coefficient, std::vector<PauliFactor> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {}

void PauliString::validate(int n_sites) const {
    BasisIndex seen = 0;
    for (const auto& f : factors_) {
        if (f.site < 0 || f.site >= n_sites) {
            throw Error(ErrorKind::Index, "Pauli factor on site " + std::to_string(f.site) +
                                              " but only " + std::to_string(n_sites) + " sites");
        }
        const BasisIndex bit = BasisIndex{1} << f.site;
        if (seen & bit) {
            throw Error(ErrorKind::Index,
                        "site " + std::to_string(f.site) + " appears twice in Pauli string");
        }
        seen |= bit;
    }
}

Complex PauliString::map_basis(BasisIndex x, BasisIndex& target) const noexcept {
    Complex amp = coefficient_;
    for (const auto& f : factors_) {
        const BasisIndex bit = BasisIndex{1} << f.site;
        const bool up = (x & bit) != 0;
        switch (f.axis) {
            case Axis::X:
                x ^= bit;
                break;
            case Axis::Y:
                amp *= up ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
                x ^= bit;
                break;
            case Axis::Z:
                if (!up) amp = -amp;
                break;
            case Axis::Plus:
                if (up) return Complex{};
                x |= bit;
                break;
            case Axis::Minus:
                if (!up) return Complex{};
                x &= ~bit;
                break;
        }
    }
    target = x;
    return amp;
}

SparseOperator::SparseOperator(Matrix m) : m_(std::move(m)) {
    const auto d = m_.rows();
    if (d != m_.cols() || d < 1 || (d & (d - 1)) != 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operator must be square with power-of-two dimension");
    }
    m_.makeCompressed();
}

StateVector SparseOperator::apply(const StateVector& v) const {
    if (v.size() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state of size " + std::to_string(v.size()) +
                                                      " vs operator dim " + std::to_string(dim()));
    }
    return m_ * v;
}

SparseOperator SparseOperator::adjoint() const { return SparseOperator(Matrix(m_.adjoint())); }

double SparseOperator::hermiticity_defect() const {
    const Matrix diff = m_ - Matrix(m_.adjoint());
    double worst = 0.0;
    for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
        for (Matrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operator sum");
    return SparseOperator(SparseOperator::Matrix(a.matrix() + b.matrix()));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operator product");
    return SparseOperator(SparseOperator::Matrix(a.matrix() * b.matrix()));
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
    return SparseOperator(SparseOperator::Matrix(s * a.matrix()));
}

int sites_from_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) {
        throw Error(ErrorKind::DimensionMismatch, "dimension " + std::to_string(dim) +
                                                      " is not a power of two");
    }
    return n;
}

SparseOperator identity_operator(int n_sites) {
    check_sites(n_sites, 2 * kDefaultMaxSites);
    SparseOperator::Matrix m(hilbert_dim(n_sites), hilbert_dim(n_sites));
    m.setIdentity();
    return SparseOperator(std::move(m));
}

SparseOperator pauli_string_matrix(const PauliString& ps, int n_sites) {
    check_sites(n_sites, kDefaultMaxSites);
    ps.validate(n_sites);
    const BasisIndex dim = hilbert_dim(n_sites);
    std::vector<Triplet> triplets;
    triplets.reserve(dim);
    for (BasisIndex x = 0; x < dim; ++x) {
        BasisIndex y = 0;
        const Complex amp = ps.map_basis(x, y);
        if (amp != Complex{}) triplets.emplace_back(y, x, amp);
    }
    return from_triplets(dim, triplets);
}

SparseOperator pauli_matrix(int site, Axis axis, int n_sites) {
    return pauli_string_matrix(PauliString(1.0, {PauliFactor{site, axis}}), n_sites);
}

SparseOperator build_hamiltonian(const LatticeGeometry& geom, const Couplings& c, int max_sites) {
    c.validate();
    const int n = geom.n_sites();
    check_sites(n, max_sites);
    const BasisIndex dim = hilbert_dim(n);
    std::vector<Triplet> triplets;
    triplets.reserve(dim * (geom.bonds().size() + 1));
    for (BasisIndex x = 0; x < dim; ++x) {
        double diagonal = 0.0;
        for (const auto& b : geom.bonds()) {
            const bool same = ((x >> b.i) & 1U) == ((x >> b.j) & 1U);
            const double w = b.multiplicity;
            diagonal += w * c.jz * (same ? 1.0 : -1.0);
            // XX flips both spins with +1; YY flips both with -1 (aligned) or +1 (anti-aligned).
            const double flip = w * (c.jx + (same ? -c.jy : c.jy));
            if (flip != 0.0) {
                const BasisIndex y = x ^ ((BasisIndex{1} << b.i) | (BasisIndex{1} << b.j));
                triplets.emplace_back(y, x, flip);
            }
        }
        if (diagonal != 0.0) triplets.emplace_back(x, x, diagonal);
    }
    return from_triplets(dim, triplets);
}

SparseOperator build_effective_hamiltonian(const SparseOperator& h, const Couplings& c, int n_sites) {
    c.validate();
    const BasisIndex dim = hilbert_dim(n_sites);
    if (static_cast<BasisIndex>(h.dim()) != dim) {
        throw Error(ErrorKind::DimensionMismatch, "Hamiltonian dimension does not match n_sites");
    }
    if (c.gamma == 0.0) return h;
    std::vector<Triplet> triplets;
    triplets.reserve(dim);
    for (BasisIndex x = 0; x < dim; ++x) {
        const int ups = __builtin_popcountll(x);
        if (ups) triplets.emplace_back(x, x, Complex(0.0, -0.5 * c.gamma * ups));
    }
    return h + from_triplets(dim, triplets);
}

SparseOperator z2_operator(int n_sites) {
    check_sites(n_sites, kDefaultMaxSites);
    const BasisIndex dim = hilbert_dim(n_sites);
    std::vector<Triplet> triplets;
    triplets.reserve(dim);
    for (BasisIndex x = 0; x < dim; ++x) triplets.emplace_back(x, x, double(z2_parity(x, n_sites)));
    return from_triplets(dim, triplets);
}

SparseOperator magnetization_operator(Axis axis, int n_sites) {
    check_sites(n_sites, kDefaultMaxSites);
    SparseOperator total = pauli_matrix(0, axis, n_sites);
    for (int i = 1; i < n_sites; ++i) total = total + pauli_matrix(i, axis, n_sites);
    return Complex(1.0 / n_sites) * total;
}

StateVector apply_pauli_string(const PauliString& ps, const StateVector& state, int n_sites) {
    ps.validate(n_sites);
    const BasisIndex dim = hilbert_dim(n_sites);
    if (static_cast<BasisIndex>(state.size()) != dim) {
        throw Error(ErrorKind::DimensionMismatch, "state size does not match 2^n_sites");
    }
    StateVector out = StateVector::Zero(state.size());
    for (BasisIndex x = 0; x < dim; ++x) {
        const Complex a = state[x];
        if (a == Complex{}) continue;
        BasisIndex y = 0;
        const Complex amp = ps.map_basis(x, y);
        if (amp != Complex{}) out[y] += amp * a;
    }
    return out;
}

namespace kernels {

void apply_lowering(int site, const StateVector& in, StateVector& out) {
    const BasisIndex bit = BasisIndex{1} << site;
    const auto dim = static_cast<BasisIndex>(in.size());
    out.resize(in.size());
    for (BasisIndex x = 0; x < dim; ++x) {
        out[x] = (x & bit) ? Complex{} : in[x | bit];
    }
}

double expect_sigma_x(int site, const StateVector& psi) {
    const BasisIndex bit = BasisIndex{1} << site;
    const auto dim = static_cast<BasisIndex>(psi.size());
    double acc = 0.0;
    for (BasisIndex x = 0; x < dim; ++x) {
        if (x & bit) continue;
        acc += (std::conj(psi[x]) * psi[x | bit]).real();
    }
    return 2.0 * acc;
}

double expect_sigma_z(int site, const StateVector& psi) {
    const BasisIndex bit = BasisIndex{1} << site;
    const auto dim = static_cast<BasisIndex>(psi.size());
    double acc = 0.0;
    for (BasisIndex x = 0; x < dim; ++x) {
        const double p = std::norm(psi[x]);
        acc += (x & bit) ? p : -p;
    }
    return acc;
}

double up_population(int site, const StateVector& psi) {
    const BasisIndex bit = BasisIndex{1} << site;
    const auto dim = static_cast<BasisIndex>(psi.size());
    double acc = 0.0;
    for (BasisIndex x = 0; x < dim; ++x) {
        if (x & bit) acc += std::norm(psi[x]);
    }
    return acc;
}

}  // namespace kernels

}  // namespace xyzlind
