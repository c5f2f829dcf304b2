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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xyzlind/operators.hpp"
#include "xyzlind/states.hpp"

namespace xyzlind {

struct Observable {
    std::string label;
    SparseOperator op;
};

// The site-averaged magnetisation M^x = (1/N) sum_i sigma^x_i, labelled "mx".
Observable mx_observable(int n_sites);
Observable mz_observable(int n_sites);

/// Real-valued observable columns sampled at strictly increasing times (units 1/gamma).
struct TimeSeries {
    std::vector<double> times;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;

    // Throws Index error for an unknown label.
    const std::vector<double>& column(const std::string& label) const;
    std::size_t size() const noexcept { return times.size(); }
};

/// Right-hand side of the master equation in operator form,
///   L[rho] = -i (H_eff rho - rho H_eff^dagger) + gamma sum_j s-_j rho s+_j,
/// with rho H_eff^dagger evaluated as (H_eff rho)^dagger. Requires Hermitian rho;
/// under that assumption the result is exactly Hermitian in floating point.
class LindbladPropagator {
public:
    LindbladPropagator(const SparseOperator& h, const Couplings& c, int n_sites);

    void derivative(const DenseMatrix& rho, DenseMatrix& out);

    // Classic fourth-order Runge-Kutta step, in place.
    void step(DenseMatrix& rho, double dt);

    int n_sites() const noexcept { return n_sites_; }

private:
    SparseOperator h_eff_;
    double gamma_;
    int n_sites_;
    DenseMatrix scratch_, k1_, k2_, k3_, k4_, stage_;
};

struct EvolveOptions {
    double dt = 1e-3;
    double t_max = 10.0;
    std::size_t record_every = 1;
    double trace_tol = 1e-6;
    int max_sites = 10;
    // Called at every record point with (t, rho).
    std::function<void(double, const DensityMatrix&)> on_record;
};

TimeSeries rk4_evolve(const DensityMatrix& rho0, const SparseOperator& h, const Couplings& c,
                      const EvolveOptions& options, std::span<const Observable> record,
                      DensityMatrix* final_state = nullptr);

}  // namespace xyzlind
