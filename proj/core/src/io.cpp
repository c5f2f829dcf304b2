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

#include "xyzlind/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "xyzlind/errors.hpp"

namespace xyzlind {

using nlohmann::ordered_json;

namespace {

std::ofstream open_output(const std::string& path) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
    out << std::setprecision(17);
    return out;
}

ordered_json to_json_value(const Metadata::Value& v) {
    return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
    if (v) {
        out << *v;
    } else {
        out << "nan";
    }
}

}  // namespace

Metadata::Metadata(const ExperimentConfig& config)
    : config_json_(serialize_config(config, false)) {
    entries_.emplace_back("units", std::string("times in 1/gamma, rates in gamma"));
}

Metadata& Metadata::set(std::string key, Value value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::string Metadata::to_json() const {
    ordered_json doc;
    doc["config"] = ordered_json::parse(config_json_);
    for (const auto& [k, v] : entries_) doc[k] = to_json_value(v);
    return doc.dump(2);
}

std::string Metadata::csv_header() const {
    std::ostringstream out;
    out << "# config: " << config_json_ << '\n';
    for (const auto& [k, v] : entries_) out << "# " << k << ": " << to_json_value(v).dump() << '\n';
    return out.str();
}

void write_time_series_csv(const std::string& path, const TimeSeries& series, const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header() << 't';
    for (const auto& l : series.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << series.times[i];
        for (const auto& col : series.columns) out << ',' << col[i];
        out << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header() << "t,mx_psi";
    for (std::size_t s = 0; s < record.site_mx.size(); ++s) out << ",mx_site" << s;
    out << '\n';
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        out << record.times[i] << ',' << record.mx_psi[i];
        for (const auto& site : record.site_mx) out << ',' << site[i];
        out << '\n';
    }
}

void write_gap_csv(const std::string& path, std::span<const GapRow> rows, const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header()
        << "jy,lambda_fit,amplitude,t_start,t_end,residual,r_squared,points,exact_gap,exact_odd_gap\n";
    for (const auto& r : rows) {
        out << r.jy << ',' << r.fit.lambda_fit << ',' << r.fit.amplitude << ',' << r.fit.t_start
            << ',' << r.fit.t_end << ',' << r.fit.residual << ',' << r.fit.r_squared << ','
            << r.fit.points << ',';
        write_optional(out, r.exact_gap);
        out << ',';
        write_optional(out, r.exact_odd_gap);
        out << '\n';
    }
}

void write_histogram_csv(const std::string& path, const MagHistogram& hist, const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header() << "bin_center,probability\n";
    for (std::size_t k = 0; k < hist.n_bins(); ++k) {
        out << hist.bin_center(k) << ',' << hist.probabilities[k] << '\n';
    }
}

void write_bimodality_csv(const std::string& path, std::span<const BimodalityRow> rows,
                          const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header() << "jy,b,sample_count,tau_int,t_s,n_modes,mode_max\n";
    for (const auto& r : rows) {
        const double mode_max = r.modes.empty() ? std::nan("") : r.modes.back();
        out << r.jy << ',' << r.b << ',' << r.histogram.sample_count << ','
            << r.histogram.autocorrelation_time << ',' << r.t_s << ',' << r.modes.size() << ','
            << mode_max << '\n';
    }
}

void write_spectrum_csv(const std::string& path, const LiouvillianSpectrum& spectrum,
                        const Metadata& meta) {
    auto out = open_output(path);
    out << meta.csv_header() << "re,im,parity\n";
    for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
        out << spectrum.eigenvalues[k].real() << ',' << spectrum.eigenvalues[k].imag() << ','
            << spectrum.parity[k] << '\n';
    }
}

void write_dense_operator_csv(const std::string& path, const SparseOperator& op) {
    auto out = open_output(path);
    const DenseMatrix m = op.to_dense();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << m(r, c).real() << ',' << m(r, c).imag();
        }
        out << '\n';
    }
}

void write_metadata_json(const std::string& path, const Metadata& meta) {
    auto out = open_output(path);
    out << meta.to_json() << '\n';
}

}  // namespace xyzlind
