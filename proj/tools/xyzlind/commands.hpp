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

#include <optional>
#include <string>
#include <vector>

#include "xyzlind/config.hpp"

namespace xyzlind::cli {

// Command-line overrides applied on top of the preset or config file.
struct Overrides {
    std::string config_path;
    std::string preset;
    std::optional<double> jx, jy, jz, gamma;
    std::optional<int> lx, ly;
    bool open = false;
    std::optional<std::string> bond_multiplicity;
    std::optional<std::string> method;
    std::optional<std::string> initial_state;
    std::optional<double> dt, t_max, t_s, fit_start, fit_end;
    std::optional<std::size_t> n_traj, record_every, n_bins;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::vector<double> jy_values;
    std::optional<std::string> out;
};

ExperimentConfig resolve(const Overrides& o);

struct RunOptions {
    std::string export_hamiltonian;
    bool dump_config = false;
};

int cmd_evolve(const ExperimentConfig& c, const RunOptions& run);
int cmd_gap(const ExperimentConfig& c, const RunOptions& run);
int cmd_trajectories(const ExperimentConfig& c, const RunOptions& run);
int cmd_bimodality(const ExperimentConfig& c, const RunOptions& run);
int cmd_spectrum(const ExperimentConfig& c, const RunOptions& run);

}  // namespace xyzlind::cli
