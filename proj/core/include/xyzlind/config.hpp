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

#include "xyzlind/lattice.hpp"
#include "xyzlind/operators.hpp"
#include "xyzlind/states.hpp"

namespace xyzlind {

struct LatticeSpec {
    int lx = 2;
    int ly = 2;
    bool periodic = true;
    BondMultiplicity multiplicity = BondMultiplicity::Deduplicate;

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

enum class Method { Rk4, Jump, Homodyne, Spectrum };

std::string_view to_string(Method m) noexcept;

struct FitSpec {
    double t_start = 5.0;
    std::optional<double> t_end;
    // Ensemble fits stop where |mean| < noise_k * stderr.
    double noise_k = 3.0;

    friend bool operator==(const FitSpec&, const FitSpec&) = default;
};

/// Fully resolved experiment description; times in units of 1/gamma.
///
/// Read from a JSON document whose keys mirror the field names, e.g.
///   {"lattice": {"lx": 3, "ly": 3, "periodic": true},
///    "couplings": {"jx": 0.9, "jy": 1.25, "jz": 1.0, "gamma": 1.0},
///    "method": "homodyne", "dt": 1e-3, "t_max": 1000, "n_traj": 16}
struct ExperimentConfig {
    std::string name = "custom";
    LatticeSpec lattice;
    Couplings couplings{0.9, 1.1, 1.0, 1.0};
    Method method = Method::Rk4;
    std::optional<Direction> initial_state;  // default: +x, or -z for homodyne
    double dt = 1e-3;
    double t_max = 50.0;
    std::optional<double> t_s;
    std::size_t n_traj = 16;
    std::uint64_t base_seed = 1;
    std::size_t record_every = 100;
    FitSpec fit;
    std::size_t n_bins = 41;
    bool exact_gap = true;
    unsigned threads = 0;
    std::vector<double> jy_values;
    std::string output_dir = "out";

    int n_sites() const noexcept { return lattice.lx * lattice.ly; }
    Direction resolved_initial_state() const noexcept;

    // Throws Config error naming the offending key.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws Config errors carrying the line of the offending key.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config, bool pretty = true);

// "paper-1d": 1D chain couplings (jx, jy, jz) = (1.8, 2.2, 2.0) gamma.
// "paper-2d": 2D lattice couplings (0.9, 1.1, 1.0) gamma.
ExperimentConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// 1x1 gives a single isolated spin.
LatticeGeometry make_geometry(const LatticeSpec& spec);

}  // namespace xyzlind
