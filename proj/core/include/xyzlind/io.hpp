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
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xyzlind/analysis.hpp"
#include "xyzlind/config.hpp"
#include "xyzlind/experiments.hpp"
#include "xyzlind/integrate.hpp"
#include "xyzlind/liouville.hpp"
#include "xyzlind/trajectories.hpp"

namespace xyzlind {

/// Ordered key/value metadata written as '# key: value' lines on top of every CSV
/// and as a JSON sidecar. Always carries the resolved configuration.
class Metadata {
public:
    using Value = std::variant<double, std::int64_t, std::string, std::vector<std::uint64_t>>;

    explicit Metadata(const ExperimentConfig& config);

    Metadata& set(std::string key, Value value);

    std::string to_json() const;
    std::string csv_header() const;

private:
    std::string config_json_;
    std::vector<std::pair<std::string, Value>> entries_;
};

// Columns: t, then one per label. Times in units of 1/gamma.
void write_time_series_csv(const std::string& path, const TimeSeries& series, const Metadata& meta);

// Columns: t, mx_psi, then mx_site<k> when per-site data was recorded.
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const Metadata& meta);

void write_gap_csv(const std::string& path, std::span<const GapRow> rows, const Metadata& meta);

// Columns: bin_center, probability.
void write_histogram_csv(const std::string& path, const MagHistogram& hist, const Metadata& meta);

void write_bimodality_csv(const std::string& path, std::span<const BimodalityRow> rows,
                          const Metadata& meta);

// Columns: re, im, parity.
void write_spectrum_csv(const std::string& path, const LiouvillianSpectrum& spectrum,
                        const Metadata& meta);

// Row-major dense export: one line per row, 2*dim comma-separated values re0,im0,re1,im1,...
void write_dense_operator_csv(const std::string& path, const SparseOperator& op);

void write_metadata_json(const std::string& path, const Metadata& meta);

}  // namespace xyzlind
