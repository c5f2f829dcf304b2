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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "xyzlind/errors.hpp"
#include "xyzlind/experiments.hpp"
#include "xyzlind/io.hpp"
#include "xyzlind/rng.hpp"

namespace xyzlind::cli {

namespace fs = std::filesystem;

namespace {

Method parse_method(const std::string& s) {
    for (auto m : {Method::Rk4, Method::Jump, Method::Homodyne, Method::Spectrum}) {
        if (s == to_string(m)) return m;
    }
    throw Error(ErrorKind::Config, "--method: unknown method '" + s + "' (rk4, jump, homodyne, spectrum)");
}

std::string path_in(const ExperimentConfig& c, const std::string& file) {
    return (fs::path(c.output_dir) / file).string();
}

std::string jy_tag(double jy) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "jy%.4g", jy);
    return buf;
}

bool stochastic(const ExperimentConfig& c) {
    return c.method == Method::Jump || c.method == Method::Homodyne;
}

Metadata metadata_for(const ExperimentConfig& c, const std::string& command) {
    Metadata meta(c);
    meta.set("command", command);
    if (stochastic(c)) {
        std::vector<std::uint64_t> seeds;
        for (std::size_t k = 0; k < c.n_traj; ++k) seeds.push_back(c.base_seed + k);
        meta.set("generator", std::string(Philox4x32::name)).set("seeds", seeds);
    }
    return meta;
}

void export_hamiltonian(const ExperimentConfig& c, const RunOptions& run) {
    if (run.export_hamiltonian.empty()) return;
    const auto h = build_hamiltonian(make_geometry(c.lattice), c.couplings);
    write_dense_operator_csv(run.export_hamiltonian, h);
    std::cout << "hamiltonian: " << run.export_hamiltonian << '\n';
}

// Prints the resolved config and tells the caller to stop when --dump-config was given.
bool dump(const ExperimentConfig& c, const RunOptions& run) {
    if (run.dump_config) std::cout << serialize_config(c) << '\n';
    return run.dump_config;
}

std::vector<double> sweep_values(const ExperimentConfig& c) {
    if (!c.jy_values.empty()) return c.jy_values;
    return {c.couplings.jy};
}

}  // namespace

ExperimentConfig resolve(const Overrides& o) {
    if (!o.config_path.empty() && !o.preset.empty()) {
        throw Error(ErrorKind::Config, "--config and --preset are mutually exclusive");
    }
    ExperimentConfig c = !o.config_path.empty() ? load_config(o.config_path)
                         : !o.preset.empty()    ? preset(o.preset)
                                                : ExperimentConfig{};
    if (o.jx) c.couplings.jx = *o.jx;
    if (o.jy) c.couplings.jy = *o.jy;
    if (o.jz) c.couplings.jz = *o.jz;
    if (o.gamma) c.couplings.gamma = *o.gamma;
    if (o.lx) c.lattice.lx = *o.lx;
    if (o.ly) c.lattice.ly = *o.ly;
    if (o.open) c.lattice.periodic = false;
    if (o.bond_multiplicity) {
        if (*o.bond_multiplicity == "deduplicate") {
            c.lattice.multiplicity = BondMultiplicity::Deduplicate;
        } else if (*o.bond_multiplicity == "count_wraps") {
            c.lattice.multiplicity = BondMultiplicity::CountWraps;
        } else {
            throw Error(ErrorKind::Config, "--bond-multiplicity: expected deduplicate or count_wraps");
        }
    }
    if (o.method) c.method = parse_method(*o.method);
    if (o.initial_state) c.initial_state = parse_direction(*o.initial_state);
    if (o.dt) c.dt = *o.dt;
    if (o.t_max) c.t_max = *o.t_max;
    if (o.t_s) c.t_s = *o.t_s;
    if (o.fit_start) c.fit.t_start = *o.fit_start;
    if (o.fit_end) c.fit.t_end = *o.fit_end;
    if (o.n_traj) c.n_traj = *o.n_traj;
    if (o.record_every) c.record_every = *o.record_every;
    if (o.n_bins) c.n_bins = *o.n_bins;
    if (o.seed) c.base_seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (!o.jy_values.empty()) c.jy_values = o.jy_values;
    if (o.out) c.output_dir = *o.out;
    c.validate();
    return c;
}

int cmd_evolve(const ExperimentConfig& c, const RunOptions& run) {
    if (dump(c, run)) return 0;
    if (c.method == Method::Spectrum) {
        throw Error(ErrorKind::Config, "'method': evolve needs rk4, jump or homodyne");
    }
    export_hamiltonian(c, run);
    const TimeSeries series = run_evolve(c);
    Metadata meta = metadata_for(c, "evolve");
    meta.set("rows", std::int64_t(series.size()));
    write_time_series_csv(path_in(c, "evolve.csv"), series, meta);
    write_metadata_json(path_in(c, "evolve.json"), meta);
    const auto& mx = series.column("mx");
    std::cout << "evolve: " << series.size() << " rows, M^x(0) = " << mx.front()
              << ", M^x(" << series.times.back() << ") = " << mx.back() << '\n'
              << "wrote " << path_in(c, "evolve.csv") << '\n';
    return 0;
}

int cmd_gap(const ExperimentConfig& c, const RunOptions& run) {
    if (dump(c, run)) return 0;
    export_hamiltonian(c, run);
    const auto jys = sweep_values(c);
    const auto rows = gap_sweep(c, jys);
    Metadata meta = metadata_for(c, "gap");
    meta.set("fit_window_start", c.fit.t_start);
    write_gap_csv(path_in(c, "gap.csv"), rows, meta);
    write_metadata_json(path_in(c, "gap.json"), meta);
    for (const auto& r : rows) {
        std::cout << "jy = " << r.jy << ": lambda_fit = " << r.fit.lambda_fit;
        if (r.exact_gap) std::cout << " (exact " << *r.exact_gap << ")";
        std::cout << '\n';
    }
    std::cout << "wrote " << path_in(c, "gap.csv") << '\n';
    return 0;
}

int cmd_trajectories(const ExperimentConfig& c, const RunOptions& run) {
    if (dump(c, run)) return 0;
    if (!stochastic(c)) throw Error(ErrorKind::Config, "'method': trajectories needs jump or homodyne");
    export_hamiltonian(c, run);
    const auto records = run_trajectories(c);
    Metadata meta = metadata_for(c, "trajectories");
    for (const auto& r : records) {
        Metadata own = meta;
        own.set("seed", std::int64_t(r.seed)).set("jumps", std::int64_t(r.jump_times.size()));
        write_trajectory_csv(path_in(c, "trajectory_" + std::to_string(r.seed) + ".csv"), r, own);
        int switches = 0;
        for (std::size_t k = 1; k < r.mx_psi.size(); ++k) {
            switches += (r.mx_psi[k] > 0) != (r.mx_psi[k - 1] > 0);
        }
        std::cout << "seed " << r.seed << ": " << r.times.size() << " samples, " << switches
                  << " sign changes of M^x_psi\n";
    }
    write_metadata_json(path_in(c, "trajectories.json"), meta);
    std::cout << "wrote " << records.size() << " trajectory files to " << c.output_dir << '\n';
    return 0;
}

int cmd_bimodality(const ExperimentConfig& c, const RunOptions& run) {
    if (dump(c, run)) return 0;
    if (!stochastic(c)) throw Error(ErrorKind::Config, "'method': bimodality needs jump or homodyne");
    export_hamiltonian(c, run);
    const auto jys = sweep_values(c);
    std::vector<BimodalityRow> rows;
    Metadata meta = metadata_for(c, "bimodality");
    for (double jy : jys) {
        rows.push_back(bimodality_point(with_jy(c, jy)));
        const auto& r = rows.back();
        Metadata own = meta;
        own.set("jy", jy).set("t_s", r.t_s).set("sample_count", std::int64_t(r.histogram.sample_count));
        write_histogram_csv(path_in(c, "histogram_" + jy_tag(jy) + ".csv"), r.histogram, own);
        std::cout << "jy = " << jy << ": b = " << r.b << ", " << r.modes.size() << " mode(s)\n";
    }
    write_bimodality_csv(path_in(c, "bimodality.csv"), rows, meta);
    write_metadata_json(path_in(c, "bimodality.json"), meta);
    std::cout << "wrote " << path_in(c, "bimodality.csv") << '\n';
    return 0;
}

int cmd_spectrum(const ExperimentConfig& c, const RunOptions& run) {
    if (dump(c, run)) return 0;
    export_hamiltonian(c, run);
    const auto spec = run_spectrum(c);
    Metadata meta = metadata_for(c, "spectrum");
    meta.set("gap", spec.gap).set("odd_gap", spec.odd_gap);
    meta.set("degenerate_steady_state", std::int64_t(spec.degenerate_steady_state));
    for (std::size_t k = 0; k < spec.warnings.size(); ++k) {
        meta.set("warning_" + std::to_string(k), spec.warnings[k]);
        std::cerr << "warning: " << spec.warnings[k] << '\n';
    }
    write_spectrum_csv(path_in(c, "spectrum.csv"), spec, meta);
    write_metadata_json(path_in(c, "spectrum.json"), meta);
    std::cout << "spectrum: " << spec.eigenvalues.size() << " eigenvalues, gap = " << spec.gap
              << ", odd-sector gap = " << spec.odd_gap << '\n'
              << "wrote " << path_in(c, "spectrum.csv") << '\n';
    return 0;
}

}  // namespace xyzlind::cli
