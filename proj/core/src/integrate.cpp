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

#include "xyzlind/integrate.hpp"

#include <cmath>
#include <string>

#include "xyzlind/errors.hpp"

namespace xyzlind {

Observable mx_observable(int n_sites) { return {"mx", magnetization_operator(Axis::X, n_sites)}; }

Observable mz_observable(int n_sites) { return {"mz", magnetization_operator(Axis::Z, n_sites)}; }

const std::vector<double>& TimeSeries::column(const std::string& label) const {
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == label) return columns[k];
    }
    throw Error(ErrorKind::Index, "time series has no column '" + label + "'");
}

LindbladPropagator::LindbladPropagator(const SparseOperator& h, const Couplings& c, int n_sites)
    : h_eff_(build_effective_hamiltonian(h, c, n_sites)), gamma_(c.gamma), n_sites_(n_sites) {}

void LindbladPropagator::derivative(const DenseMatrix& rho, DenseMatrix& out) {
    scratch_.noalias() = h_eff_.matrix() * rho;
    out.resize(rho.rows(), rho.cols());
    const Eigen::Index d = rho.rows();
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex diff = scratch_(r, c) - std::conj(scratch_(c, r));
            out(r, c) = Complex(diff.imag(), -diff.real());  // -i * diff
        }
    }
    if (gamma_ == 0.0) return;
    for (int j = 0; j < n_sites_; ++j) {
        const Eigen::Index bit = Eigen::Index{1} << j;
        for (Eigen::Index c = 0; c < d; ++c) {
            if (c & bit) continue;
            for (Eigen::Index r = 0; r < d; ++r) {
                if (r & bit) continue;
                out(r, c) += gamma_ * rho(r | bit, c | bit);
            }
        }
    }
}

void LindbladPropagator::step(DenseMatrix& rho, double dt) {
    derivative(rho, k1_);
    stage_ = rho + (0.5 * dt) * k1_;
    derivative(stage_, k2_);
    stage_ = rho + (0.5 * dt) * k2_;
    derivative(stage_, k3_);
    stage_ = rho + dt * k3_;
    derivative(stage_, k4_);
    rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

TimeSeries rk4_evolve(const DensityMatrix& rho0, const SparseOperator& h, const Couplings& c,
                      const EvolveOptions& options, std::span<const Observable> record,
                      DensityMatrix* final_state) {
    c.validate();
    if (!(options.dt > 0.0) || !(options.t_max > 0.0) || options.record_every == 0) {
        throw Error(ErrorKind::Config, "rk4_evolve needs dt > 0, t_max > 0, record_every >= 1");
    }
    const int n = rho0.n_sites;
    if (n < 1 || n > options.max_sites) {
        throw Error(ErrorKind::Size, "rk4 evolution supports up to " +
                                         std::to_string(options.max_sites) + " sites, got " +
                                         std::to_string(n));
    }
    if (rho0.matrix.rows() != h.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "initial state and Hamiltonian dimensions differ");
    }
    for (const auto& obs : record) {
        if (obs.op.dim() != h.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "observable '" + obs.label + "' has wrong dimension");
        }
    }

    LindbladPropagator prop(h, c, n);
    DensityMatrix rho = rho0;
    const Complex trace0 = rho.matrix.trace();
    const auto n_steps = static_cast<std::size_t>(std::ceil(options.t_max / options.dt - 1e-9));

    TimeSeries series;
    for (const auto& obs : record) series.labels.push_back(obs.label);
    series.columns.resize(record.size());

    auto sample = [&](std::size_t step) {
        const double t = double(step) * options.dt;
        if (!rho.matrix.allFinite()) {
            throw Error(ErrorKind::Divergence, "non-finite density matrix at t = " + std::to_string(t));
        }
        const double drift = std::abs(rho.matrix.trace() - trace0);
        if (drift > options.trace_tol) {
            throw Error(ErrorKind::StepSize, "trace drifted by " + std::to_string(drift) +
                                                 " at t = " + std::to_string(t) +
                                                 "; reduce dt (currently " +
                                                 std::to_string(options.dt) + ")");
        }
        series.times.push_back(t);
        for (std::size_t k = 0; k < record.size(); ++k) {
            series.columns[k].push_back(expectation(rho, record[k].op).real());
        }
        if (options.on_record) options.on_record(t, rho);
    };

    sample(0);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        prop.step(rho.matrix, options.dt);
        if (step % options.record_every == 0 || step == n_steps) sample(step);
    }
    if (final_state) *final_state = std::move(rho);
    return series;
}

}  // namespace xyzlind
