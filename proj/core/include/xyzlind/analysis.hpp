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
#include <span>
#include <string>
#include <vector>

#include "xyzlind/integrate.hpp"
#include "xyzlind/trajectories.hpp"

namespace xyzlind {

/// Exponential tail fit |y(t) - y_ss| = |A| exp(-lambda t) by least squares on the log.
struct DecayFit {
    double lambda_fit = 0.0;
    double amplitude = 0.0;  // signed like the data
    double t_start = 0.0;
    double t_end = 0.0;
    double residual = 0.0;   // rms of the log-linear residuals
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Fits over t_start <= t <= t_end (default: end of data). Throws FitWindow with fewer
// than 10 points or values within 1e-12 of steady_value, FitOscillation on a sign change.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double t_start,
                   double steady_value = 0.0, std::optional<double> t_end = std::nullopt);

DecayFit fit_decay(const TimeSeries& series, const std::string& label, double t_start,
                   double steady_value = 0.0, std::optional<double> t_end = std::nullopt);

// Last time before the first point at or after t_start where |mean| < k * stderr;
// the end of data if the signal never drops into the noise.
double noise_limited_end(std::span<const double> times, std::span<const double> mean,
                         std::span<const double> std_error, double t_start, double k = 3.0);

/// p(M^x) over [-1, 1] from pooled trajectory samples with t > t_s.
///
/// The raw second and fourth moments are kept so that the bimodality coefficient
/// does not depend on the binning.
struct MagHistogram {
    std::vector<double> bin_edges;
    std::vector<double> probabilities;
    std::size_t sample_count = 0;
    double t_s = 0.0;
    std::vector<std::uint64_t> sources;
    double second_moment = 0.0;
    double fourth_moment = 0.0;
    double autocorrelation_time = 0.0;  // mean integrated autocorrelation time, in samples

    std::size_t n_bins() const noexcept { return probabilities.size(); }
    double bin_center(std::size_t k) const { return 0.5 * (bin_edges[k] + bin_edges[k + 1]); }
};

MagHistogram build_histogram(std::span<const TrajectoryRecord> records, double t_s,
                             std::size_t n_bins);

// Histogram of plain samples (no time window).
MagHistogram histogram_from_samples(std::span<const double> samples, std::size_t n_bins);

// b = <M^2>^2 / <M^4> from raw samples. Throws UndefinedBimodality when <M^4> = 0.
double bimodality(const MagHistogram& hist);
double bimodality(std::span<const double> samples);

// Same ratio evaluated on bin centres; differs from the raw value by O(bin width^2).
double binned_bimodality(const MagHistogram& hist);

// Integrated autocorrelation time with Sokal's self-consistent window (c = 5).
double integrated_autocorrelation_time(std::span<const double> series);

struct ModeOptions {
    int smoothing_half_width = 2;
    double min_relative_height = 0.2;
    double max_valley_ratio = 0.75;  // a secondary peak must dip below this fraction of its height
};

// Peak positions of the sign-symmetrised, smoothed histogram, ascending.
std::vector<double> find_modes(const MagHistogram& hist, const ModeOptions& options = {});

}  // namespace xyzlind
