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

#include "xyzlind/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "xyzlind/errors.hpp"

namespace xyzlind {

namespace {

using Triplet = Eigen::Triplet<Complex, std::int64_t>;

Eigen::Index hilbert_from_liouville_dim(Eigen::Index dim) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
    if (d * d != dim) {
        throw Error(ErrorKind::DimensionMismatch, "superoperator dimension " + std::to_string(dim) +
                                                      " is not a perfect square");
    }
    return d;
}

struct SectorEigen {
    std::vector<Eigen::Index> indices;
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
};

SectorEigen diagonalise_block(const SparseOperator::Matrix& l, std::vector<Eigen::Index> indices,
                              bool with_vectors) {
    const Eigen::Index n = static_cast<Eigen::Index>(indices.size());
    std::vector<Eigen::Index> position(l.rows(), -1);
    for (Eigen::Index k = 0; k < n; ++k) position[indices[k]] = k;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (SparseOperator::Matrix::InnerIterator it(l, indices[k]); it; ++it) {
            block(k, position[it.col()]) = it.value();
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, with_vectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::Convergence, "dense eigensolver failed on a block of size " +
                                                std::to_string(n));
    }
    SectorEigen out{std::move(indices), solver.eigenvalues(), {}};
    if (with_vectors) out.vectors = solver.eigenvectors();
    return out;
}

Eigen::VectorXcd embed(const SectorEigen& s, Eigen::Index column, Eigen::Index full_dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(full_dim);
    for (std::size_t k = 0; k < s.indices.size(); ++k) v[s.indices[k]] = s.vectors(k, column);
    return v;
}

}  // namespace

DenseMatrix unvec(const Eigen::Ref<const Eigen::VectorXcd>& v, Eigen::Index d) {
    DenseMatrix m(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) m(r, c) = v[vec_index(r, c, d)];
    }
    return m;
}

Eigen::VectorXcd vec(const DenseMatrix& m) {
    Eigen::VectorXcd v(m.size());
    const Eigen::Index d = m.rows();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < d; ++r) v[vec_index(r, c, d)] = m(r, c);
    }
    return v;
}

SparseOperator build_liouvillian(const SparseOperator& h, const Couplings& c, int n_sites,
                                 Eigen::Index max_dim) {
    const Eigen::Index d = h.dim();
    if (d != static_cast<Eigen::Index>(hilbert_dim(n_sites))) {
        throw Error(ErrorKind::DimensionMismatch, "Hamiltonian dimension does not match n_sites");
    }
    if (d * d > max_dim) {
        throw Error(ErrorKind::SpectralSize, "Liouvillian of dimension " + std::to_string(d * d) +
                                                 " exceeds limit " + std::to_string(max_dim));
    }
    const SparseOperator h_eff = build_effective_hamiltonian(h, c, n_sites);
    const auto& m = h_eff.matrix();
    const Complex minus_i(0.0, -1.0);
    const Complex plus_i(0.0, 1.0);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(2 * m.nonZeros() * d + n_sites * d * d / 4));
    for (Eigen::Index r = 0; r < d; ++r) {
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
            const Eigen::Index col = it.col();
            const Complex v = it.value();
            for (Eigen::Index k = 0; k < d; ++k) {
                // I (x) H_eff acts on the row index of rho.
                triplets.emplace_back(vec_index(r, k, d), vec_index(col, k, d), minus_i * v);
                // conj(H_eff) (x) I acts on the column index: rho H_eff^dagger.
                triplets.emplace_back(vec_index(k, r, d), vec_index(k, col, d), plus_i * std::conj(v));
            }
        }
    }
    if (c.gamma > 0.0) {
        for (int j = 0; j < n_sites; ++j) {
            const Eigen::Index bit = Eigen::Index{1} << j;
            for (Eigen::Index b = 0; b < d; ++b) {
                if (b & bit) continue;
                for (Eigen::Index a = 0; a < d; ++a) {
                    if (a & bit) continue;
                    triplets.emplace_back(vec_index(a, b, d), vec_index(a | bit, b | bit, d),
                                          c.gamma);
                }
            }
        }
    }
    SparseOperator::Matrix l(d * d, d * d);
    l.setFromTriplets(triplets.begin(), triplets.end());
    l.prune(Complex{}, 0.0);
    return SparseOperator(std::move(l));
}

SpectrumOptions SpectrumOptions::for_rate(double gamma) {
    SpectrumOptions o;
    o.zero_tol = 1e-9 * (gamma > 0.0 ? gamma : 1.0);
    return o;
}

LiouvillianSpectrum full_spectrum(const SparseOperator& l, const SpectrumOptions& options) {
    const Eigen::Index dim = l.dim();
    if (dim > options.max_dense_dim) {
        throw Error(ErrorKind::SpectralSize, "dense diagonalisation of dimension " +
                                                 std::to_string(dim) + " exceeds limit " +
                                                 std::to_string(options.max_dense_dim));
    }
    const Eigen::Index d = hilbert_from_liouville_dim(dim);
    const int n_sites = sites_from_dim(d);
    const auto& m = l.matrix();

    std::vector<int> sector(dim);
    for (Eigen::Index b = 0; b < d; ++b) {
        for (Eigen::Index a = 0; a < d; ++a) {
            sector[vec_index(a, b, d)] = z2_parity(a, n_sites) * z2_parity(b, n_sites);
        }
    }
    bool block_diagonal = true;
    for (Eigen::Index r = 0; r < dim && block_diagonal; ++r) {
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
            if (sector[r] != sector[it.col()]) {
                block_diagonal = false;
                break;
            }
        }
    }

    std::vector<SectorEigen> blocks;
    std::vector<int> block_parity;
    if (block_diagonal) {
        for (int p : {+1, -1}) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index k = 0; k < dim; ++k) {
                if (sector[k] == p) idx.push_back(k);
            }
            if (idx.empty()) continue;
            blocks.push_back(diagonalise_block(m, std::move(idx), options.compute_modes));
            block_parity.push_back(p);
        }
    } else {
        std::vector<Eigen::Index> idx(dim);
        for (Eigen::Index k = 0; k < dim; ++k) idx[k] = k;
        blocks.push_back(diagonalise_block(m, std::move(idx), true));
        block_parity.push_back(0);
    }

    LiouvillianSpectrum out;
    struct Ref {
        std::size_t block;
        Eigen::Index column;
    };
    std::vector<Ref> refs;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& blk = blocks[bi];
        for (Eigen::Index k = 0; k < blk.values.size(); ++k) {
            int parity = block_parity[bi];
            if (parity == 0) {
                // Mixed spectrum: assign parity from the eigenvector overlap.
                const Eigen::VectorXcd v = embed(blk, k, dim);
                Complex overlap{};
                for (Eigen::Index q = 0; q < dim; ++q) overlap += std::norm(v[q]) * double(sector[q]);
                parity = overlap.real() >= 0.0 ? 1 : -1;
            }
            out.eigenvalues.push_back(blk.values[k]);
            out.parity.push_back(parity);
            refs.push_back({bi, k});
        }
    }

    // Steady state: the eigenvalue closest to zero, which must sit within zero_tol.
    std::size_t steady = 0;
    std::size_t zero_count = 0;
    for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
        if (std::abs(out.eigenvalues[k]) < std::abs(out.eigenvalues[steady])) steady = k;
        if (std::abs(out.eigenvalues[k]) <= options.zero_tol) ++zero_count;
    }
    if (zero_count == 0) {
        throw Error(ErrorKind::NoSteadyState,
                    "no eigenvalue within " + std::to_string(options.zero_tol) +
                        " of zero; closest is " + std::to_string(std::abs(out.eigenvalues[steady])));
    }
    out.steady_eigenvalue = out.eigenvalues[steady];
    if (zero_count > 1) {
        out.degenerate_steady_state = true;
        out.warnings.push_back(std::to_string(zero_count) +
                               " eigenvalues within zero_tol: steady state is degenerate");
    }

    double gap = std::numeric_limits<double>::infinity();
    double odd_gap = std::numeric_limits<double>::infinity();
    std::size_t slow = steady;
    for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
        const Complex lam = out.eigenvalues[k];
        if (std::abs(lam) <= options.zero_tol) continue;
        const double rate = std::abs(lam.real());
        const bool better = rate < gap ||
                            (rate == gap && lam.imag() > out.eigenvalues[slow].imag());
        if (better) {
            gap = rate;
            slow = k;
        }
        if (out.parity[k] < 0) odd_gap = std::min(odd_gap, rate);
    }
    out.gap = std::isfinite(gap) ? gap : 0.0;
    out.odd_gap = std::isfinite(odd_gap) ? odd_gap : 0.0;
    out.slow_eigenvalue = out.eigenvalues[slow];
    out.slow_parity = out.parity[slow];
    if (out.gap < 10.0 * options.zero_tol) {
        for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
            if (std::abs(out.eigenvalues[k].real()) < 10.0 * options.zero_tol) {
                out.ambiguous_candidates.push_back(out.eigenvalues[k]);
            }
        }
        out.warnings.push_back("gap below 10 zero_tol: steady state and slowest mode are ambiguous");
    }

    if (options.compute_modes) {
        const auto& sref = refs[steady];
        DenseMatrix rho = unvec(embed(blocks[sref.block], sref.column, dim), d);
        const Complex tr = rho.trace();
        if (std::abs(tr) < 1e-14) {
            throw Error(ErrorKind::NoSteadyState, "null eigenvector has zero trace");
        }
        rho /= tr;
        rho = 0.5 * (rho + rho.adjoint()).eval();
        out.steady_state = DensityMatrix{n_sites, std::move(rho)};

        const auto& mref = refs[slow];
        out.slow_mode = unvec(embed(blocks[mref.block], mref.column, dim), d);
    }
    return out;
}

DensityMatrix steady_state_direct(const SparseOperator& l, const SteadyStateOptions& options) {
    const Eigen::Index dim = l.dim();
    if (dim > options.max_dim) {
        throw Error(ErrorKind::SpectralSize, "steady-state solve of dimension " +
                                                 std::to_string(dim) + " exceeds limit " +
                                                 std::to_string(options.max_dim));
    }
    const Eigen::Index d = hilbert_from_liouville_dim(dim);
    const int n_sites = sites_from_dim(d);
    const auto& m = l.matrix();

    // Row vec_index(0, 0) is replaced by the trace functional.
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(m.nonZeros() + d));
    for (Eigen::Index r = 1; r < dim; ++r) {
        for (SparseOperator::Matrix::InnerIterator it(m, r); it; ++it) {
            triplets.emplace_back(r, it.col(), it.value());
        }
    }
    for (Eigen::Index a = 0; a < d; ++a) triplets.emplace_back(0, vec_index(a, a, d), 1.0);
    Eigen::SparseMatrix<Complex> a(dim, dim);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorKind::Convergence, "sparse LU factorisation failed: " + lu.lastErrorMessage());
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs[0] = 1.0;
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw Error(ErrorKind::Convergence, "sparse LU solve failed");
    }
    const double residual = (m * x).norm();
    const double tol = options.residual_tol * (options.gamma > 0.0 ? options.gamma : 1.0);
    if (residual > tol) {
        throw Error(ErrorKind::Convergence, "steady-state residual " + std::to_string(residual) +
                                                " exceeds " + std::to_string(tol));
    }
    DenseMatrix rho = unvec(x, d);
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix{n_sites, std::move(rho)};
}

}  // namespace xyzlind
