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

#include "xyzlind/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xyzlind/errors.hpp"

namespace xyzlind {

DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double t_start,
                   double steady_value, std::optional<double> t_end) {
    if (times.size() != values.size()) {
        throw Error(ErrorKind::DimensionMismatch, "fit_decay: times and values differ in length");
    }
    const double end = t_end.value_or(times.empty() ? t_start : times.back());
    if (!(end > t_start)) {
        throw Error(ErrorKind::FitWindow, "fit window [" + std::to_string(t_start) + ", " +
                                              std::to_string(end) + "] is empty");
    }
    std::vector<double> xs, ys;
    int sign = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < t_start || times[k] > end) continue;
        const double dev = values[k] - steady_value;
        if (std::abs(dev) <= 1e-12) {
            throw Error(ErrorKind::FitWindow, "value at t = " + std::to_string(times[k]) +
                                                  " is at the numerical floor");
        }
        const int s = dev > 0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            throw Error(ErrorKind::FitOscillation,
                        "decay changes sign at t = " + std::to_string(times[k]) +
                            "; the slowest mode is oscillatory, fit the envelope instead");
        }
        sign = s;
        xs.push_back(times[k]);
        ys.push_back(std::log(std::abs(dev)));
    }
    if (xs.size() < 10) {
        throw Error(ErrorKind::FitWindow, "only " + std::to_string(xs.size()) +
                                              " points in the fit window, need 10");
    }
    const double n = double(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (intercept + slope * xs[k]);
        ss_res += r * r;
    }
    DecayFit fit;
    fit.lambda_fit = -slope;
    fit.amplitude = sign * std::exp(intercept);
    fit.t_start = xs.front();
    fit.t_end = xs.back();
    fit.residual = std::sqrt(ss_res / n);
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points = xs.size();
    return fit;
}

DecayFit fit_decay(const TimeSeries& series, const std::string& label, double t_start,
                   double steady_value, std::optional<double> t_end) {
    return fit_decay(series.times, series.column(label), t_start, steady_value, t_end);
}

double noise_limited_end(std::span<const double> times, std::span<const double> mean,
                         std::span<const double> std_error, double t_start, double k) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_start) continue;
        if (std::abs(mean[i]) < k * std_error[i]) return i > 0 ? times[i - 1] : times[0];
    }
    return times.empty() ? t_start : times.back();
}

namespace {

// Neumaier-compensated sum in extended precision.
class MomentSum {
public:
    void add(long double x) noexcept {
        const long double t = sum_ + x;
        comp_ += std::fabs(sum_) >= std::fabs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    long double value() const noexcept { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

MagHistogram empty_histogram(std::size_t n_bins) {
    if (n_bins < 2) throw Error(ErrorKind::Config, "histogram needs at least 2 bins");
    MagHistogram h;
    h.bin_edges.resize(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) h.bin_edges[k] = -1.0 + 2.0 * double(k) / double(n_bins);
    h.probabilities.assign(n_bins, 0.0);
    return h;
}

std::size_t bin_of(double m, std::size_t n_bins) {
    const double u = (std::clamp(m, -1.0, 1.0) + 1.0) * 0.5 * double(n_bins);
    return std::min(static_cast<std::size_t>(u), n_bins - 1);
}

// Moments are summed in extended precision and rounded once, so that equal-magnitude
// samples give <M^2>^2 == <M^4> bit for bit.
void finish(MagHistogram& h, const std::vector<std::size_t>& counts, const MomentSum& m2,
            const MomentSum& m4) {
    if (h.sample_count == 0) throw Error(ErrorKind::EmptyWindow, "no samples in the histogram window");
    const double total = double(h.sample_count);
    for (std::size_t k = 0; k < counts.size(); ++k) h.probabilities[k] = double(counts[k]) / total;
    h.second_moment = static_cast<double>(m2.value() / h.sample_count);
    h.fourth_moment = static_cast<double>(m4.value() / h.sample_count);
}

}  // namespace

MagHistogram build_histogram(std::span<const TrajectoryRecord> records, double t_s,
                             std::size_t n_bins) {
    MagHistogram h = empty_histogram(n_bins);
    h.t_s = t_s;
    std::vector<std::size_t> counts(n_bins, 0);
    MomentSum m2, m4;
    double tau_sum = 0.0;
    std::vector<double> window;
    for (const auto& rec : records) {
        window.clear();
        for (std::size_t k = 0; k < rec.times.size(); ++k) {
            if (rec.times[k] > t_s) window.push_back(rec.mx_psi[k]);
        }
        if (window.empty()) {
            throw Error(ErrorKind::EmptyWindow, "trajectory with seed " + std::to_string(rec.seed) +
                                                    " ends before t_s = " + std::to_string(t_s));
        }
        for (double m : window) {
            ++counts[bin_of(m, n_bins)];
            const double sq = m * m;
            m2.add(sq);
            m4.add(sq * sq);
        }
        h.sample_count += window.size();
        h.sources.push_back(rec.seed);
        tau_sum += integrated_autocorrelation_time(window);
    }
    finish(h, counts, m2, m4);
    h.autocorrelation_time = tau_sum / double(records.size());
    return h;
}

MagHistogram histogram_from_samples(std::span<const double> samples, std::size_t n_bins) {
    MagHistogram h = empty_histogram(n_bins);
    std::vector<std::size_t> counts(n_bins, 0);
    MomentSum m2, m4;
    for (double m : samples) {
        ++counts[bin_of(m, n_bins)];
        const double sq = m * m;
        m2.add(sq);
        m4.add(sq * sq);
    }
    h.sample_count = samples.size();
    finish(h, counts, m2, m4);
    return h;
}

double bimodality(const MagHistogram& hist) {
    if (!(hist.fourth_moment > 0.0)) {
        throw Error(ErrorKind::UndefinedBimodality, "all samples are zero; b is 0/0");
    }
    return hist.second_moment * hist.second_moment / hist.fourth_moment;
}

double bimodality(std::span<const double> samples) {
    MomentSum m2, m4;
    for (double m : samples) {
        const double sq = m * m;
        m2.add(sq);
        m4.add(sq * sq);
    }
    if (!(m4.value() > 0.0)) throw Error(ErrorKind::UndefinedBimodality, "all samples are zero; b is 0/0");
    const auto n = static_cast<long double>(samples.size());
    const double mean2 = static_cast<double>(m2.value() / n);
    return mean2 * mean2 / static_cast<double>(m4.value() / n);
}

double binned_bimodality(const MagHistogram& hist) {
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t k = 0; k < hist.n_bins(); ++k) {
        const double c = hist.bin_center(k);
        m2 += hist.probabilities[k] * c * c;
        m4 += hist.probabilities[k] * c * c * c * c;
    }
    if (!(m4 > 0.0)) throw Error(ErrorKind::UndefinedBimodality, "binned fourth moment is zero");
    return m2 * m2 / m4;
}

double integrated_autocorrelation_time(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) return 0.5;
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / double(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) return 0.5;
    double tau = 0.5;
    for (std::size_t lag = 1; lag < n / 2; ++lag) {
        double c = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) c += (series[i] - mean) * (series[i + lag] - mean);
        tau += c / c0;
        if (double(lag) >= 5.0 * tau) break;
    }
    return std::max(tau, 0.5);
}

std::vector<double> find_modes(const MagHistogram& hist, const ModeOptions& options) {
    const std::size_t n = hist.n_bins();
    std::vector<double> sym(n), smooth(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) sym[k] = 0.5 * (hist.probabilities[k] + hist.probabilities[n - 1 - k]);
    const int w = options.smoothing_half_width;
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        int cnt = 0;
        for (int d = -w; d <= w; ++d) {
            const auto q = static_cast<std::ptrdiff_t>(k) + d;
            if (q < 0 || q >= static_cast<std::ptrdiff_t>(n)) continue;
            acc += sym[q];
            ++cnt;
        }
        smooth[k] = acc / cnt;
    }
    // Re-symmetrise so rounding in the window sums cannot break the mirror symmetry.
    for (std::size_t k = 0; k < n / 2; ++k) smooth[k] = smooth[n - 1 - k] = 0.5 * (smooth[k] + smooth[n - 1 - k]);
    const double top = *std::max_element(smooth.begin(), smooth.end());
    if (!(top > 0.0)) return {};

    // A peak is a run of equal bins higher than both neighbours; its position is the run centre.
    struct Peak {
        std::size_t lo, hi;
        double height;
    };
    std::vector<Peak> candidates;
    for (std::size_t k = 0; k < n;) {
        std::size_t end = k;
        while (end + 1 < n && std::abs(smooth[end + 1] - smooth[k]) <= 1e-14 * top) ++end;
        const bool above_left = k == 0 || smooth[k] > smooth[k - 1];
        const bool above_right = end + 1 == n || smooth[k] > smooth[end + 1];
        if (above_left && above_right && smooth[k] >= options.min_relative_height * top) {
            candidates.push_back({k, end, smooth[k]});
        }
        k = end + 1;
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Peak& a, const Peak& b) { return a.height > b.height; });
    std::vector<Peak> accepted;
    for (const Peak& c : candidates) {
        bool separated = true;
        for (const Peak& a : accepted) {
            const std::size_t lo = std::min(a.hi, c.hi), hi = std::max(a.lo, c.lo);
            const double valley = *std::min_element(smooth.begin() + lo, smooth.begin() + hi + 1);
            if (valley > options.max_valley_ratio * c.height) {
                separated = false;
                break;
            }
        }
        if (separated) accepted.push_back(c);
    }
    std::vector<double> modes;
    for (const Peak& a : accepted) modes.push_back(0.5 * (hist.bin_center(a.lo) + hist.bin_center(a.hi)));
    std::sort(modes.begin(), modes.end());
    return modes;
}

}  // namespace xyzlind
