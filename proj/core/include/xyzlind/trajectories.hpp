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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xyzlind/operators.hpp"
#include "xyzlind/states.hpp"

namespace xyzlind {

enum class Unraveling { Jump, Homodyne };

std::string_view to_string(Unraveling u) noexcept;

struct TrajectoryOptions {
    double dt = 1e-3;
    double t_max = 10.0;
    std::size_t record_every = 1;
    bool per_site = false;
    bool keep_final_state = false;
};

/// One realisation of an unravelling, recorded at every record_every-th step.
///
/// mx_psi and mz_psi are site averages of <sigma^x_i> and <sigma^z_i> in the
/// normalised state, so |mx_psi| <= 1.
struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<double> times;
    std::vector<double> mx_psi;
    std::vector<double> mz_psi;
    std::vector<std::vector<double>> site_mx;  // [site][time], only with per_site
    std::vector<double> jump_times;            // quantum-jump unravelling only
    std::vector<int> jump_sites;
    std::optional<StateVector> final_state;    // normalised
};

/// Quantum-jump (Monte Carlo wave function) trajectory.
///
/// The unnormalised state evolves under h_eff with a fourth-order Taylor step;
/// a jump fires once its squared norm drops below a uniform threshold drawn after
/// the previous jump. The channel is chosen with weight <s+_j s-_j>.
TrajectoryRecord mcwf_trajectory(const PureState& psi0, const SparseOperator& h_eff,
                                 const Couplings& c, const TrajectoryOptions& options,
                                 std::uint64_t seed);

/// Homodyne (diffusive) trajectory with measurement of the sigma^x quadrature.
///
/// Per step, with s_j = <sigma^x_j> and independent dW_j ~ N(0, dt):
///   psi += { -i H_eff dt + sum_j [ sqrt(gamma) (s-_j - s_j/2) dW_j
///                                  + gamma/2 (s_j s-_j - s_j^2/4) dt ] } psi,
/// then renormalised. The linear -i H_eff dt part uses the fourth-order Taylor
/// propagator instead of a single Euler term.
TrajectoryRecord homodyne_trajectory(const PureState& psi0, const SparseOperator& h,
                                     const Couplings& c, const TrajectoryOptions& options,
                                     std::uint64_t seed);

struct EnsembleSpec {
    PureState psi0;
    SparseOperator h;  // Hermitian Hamiltonian; H_eff is derived internally
    Couplings couplings;
    Unraveling unraveling = Unraveling::Jump;
    TrajectoryOptions options;
};

struct EnsembleOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    bool keep_records = false;
    bool reconstruct_final = false;
};

struct SeriesStats {
    std::vector<double> mean;
    std::optional<std::vector<double>> std_error;  // absent for a single trajectory
};

struct EnsembleResult {
    std::size_t n_traj = 0;
    std::uint64_t base_seed = 0;
    std::string generator;
    std::vector<double> times;
    SeriesStats mx;
    SeriesStats mz;
    std::optional<DensityMatrix> final_density;  // (1/N_T) sum |psi_k><psi_k| at t_max
    std::vector<TrajectoryRecord> records;
};

// Runs trajectories with seeds base_seed + k. Output is independent of thread count.
EnsembleResult run_ensemble(const EnsembleSpec& spec, std::size_t n_traj, std::uint64_t base_seed,
                            const EnsembleOptions& options = {});

}  // namespace xyzlind
