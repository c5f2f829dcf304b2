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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xyzlind/analysis.hpp"
#include "xyzlind/config.hpp"
#include "xyzlind/integrate.hpp"
#include "xyzlind/liouville.hpp"
#include "xyzlind/trajectories.hpp"

namespace xyzlind {

// Spectrum point of a Liouvillian gap sweep.
struct GapRow {
    double jy = 0.0;
    DecayFit fit;
    std::optional<double> exact_gap;      // full_spectrum gap, small systems only
    std::optional<double> exact_odd_gap;  // gap of the Z2-odd sector
};

struct BimodalityRow {
    double jy = 0.0;
    double b = 0.0;
    double t_s = 0.0;
    std::vector<double> modes;
    MagHistogram histogram;
};

// Largest system for which sweeps attach the exact diagonalisation gap.
inline constexpr int kExactGapMaxSites = 5;

ExperimentConfig with_jy(const ExperimentConfig& base, double jy);

// M^x(t) (and M^z) for the configured method. Ensembles add *_se columns.
TimeSeries run_evolve(const ExperimentConfig& config);

GapRow gap_point(const ExperimentConfig& config);
std::vector<GapRow> gap_sweep(const ExperimentConfig& base, std::span<const double> jy_values);

// Independent homodyne (or jump) trajectories with per-site records.
std::vector<TrajectoryRecord> run_trajectories(const ExperimentConfig& config);

// Explicit t_s, else 3/gap when the spectrum is affordable, else t_max/10.
double resolve_t_s(const ExperimentConfig& config);

BimodalityRow bimodality_point(const ExperimentConfig& config);
std::vector<BimodalityRow> bimodality_sweep(const ExperimentConfig& base,
                                            std::span<const double> jy_values);

LiouvillianSpectrum run_spectrum(const ExperimentConfig& config);

}  // namespace xyzlind
