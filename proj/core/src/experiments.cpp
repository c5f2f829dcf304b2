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

#include "xyzlind/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xyzlind/errors.hpp"

namespace xyzlind {

namespace {

EnsembleSpec ensemble_spec(const ExperimentConfig& config, const LatticeGeometry& geom) {
    EnsembleSpec spec;
    spec.psi0 = product_pure_state(geom.n_sites(), config.resolved_initial_state());
    spec.h = build_hamiltonian(geom, config.couplings);
    spec.couplings = config.couplings;
    spec.unraveling = config.method == Method::Homodyne ? Unraveling::Homodyne : Unraveling::Jump;
    spec.options.dt = config.dt;
    spec.options.t_max = config.t_max;
    spec.options.record_every = config.record_every;
    return spec;
}

std::optional<LiouvillianSpectrum> small_spectrum(const ExperimentConfig& config,
                                                  const LatticeGeometry& geom) {
    if (!config.exact_gap || geom.n_sites() > kExactGapMaxSites) return std::nullopt;
    const SparseOperator h = build_hamiltonian(geom, config.couplings);
    const SparseOperator l = build_liouvillian(h, config.couplings, geom.n_sites());
    SpectrumOptions opts = SpectrumOptions::for_rate(config.couplings.gamma);
    opts.compute_modes = false;
    return full_spectrum(l, opts);
}

}  // namespace

ExperimentConfig with_jy(const ExperimentConfig& base, double jy) {
    ExperimentConfig c = base;
    c.couplings.jy = jy;
    return c;
}

TimeSeries run_evolve(const ExperimentConfig& config) {
    config.validate();
    const LatticeGeometry geom = make_geometry(config.lattice);
    const int n = geom.n_sites();
    switch (config.method) {
        case Method::Rk4: {
            const SparseOperator h = build_hamiltonian(geom, config.couplings);
            EvolveOptions opts;
            opts.dt = config.dt;
            opts.t_max = config.t_max;
            opts.record_every = config.record_every;
            const std::vector<Observable> obs{mx_observable(n), mz_observable(n)};
            return rk4_evolve(product_state(n, config.resolved_initial_state()), h, config.couplings,
                              opts, obs);
        }
        case Method::Jump:
        case Method::Homodyne: {
            EnsembleOptions eopts;
            eopts.threads = config.threads;
            const EnsembleResult ens =
                run_ensemble(ensemble_spec(config, geom), config.n_traj, config.base_seed, eopts);
            TimeSeries series;
            series.times = ens.times;
            series.labels = {"mx"};
            series.columns = {ens.mx.mean};
            if (ens.mx.std_error) {
                series.labels.push_back("mx_se");
                series.columns.push_back(*ens.mx.std_error);
            }
            series.labels.push_back("mz");
            series.columns.push_back(ens.mz.mean);
            if (ens.mz.std_error) {
                series.labels.push_back("mz_se");
                series.columns.push_back(*ens.mz.std_error);
            }
            return series;
        }
        case Method::Spectrum:
            break;
    }
    throw Error(ErrorKind::Config, "'method': evolve needs rk4, jump or homodyne");
}

GapRow gap_point(const ExperimentConfig& config) {
    if (config.method == Method::Spectrum) {
        throw Error(ErrorKind::Config,
                    "'method': gap sweeps fit rk4, jump or homodyne dynamics; the exact gap is "
                    "attached automatically for small systems");
    }
    const TimeSeries series = run_evolve(config);
    GapRow row;
    row.jy = config.couplings.jy;
    double t_end = config.fit.t_end.value_or(config.t_max);
    if (config.method != Method::Rk4) {
        const auto& labels = series.labels;
        if (std::find(labels.begin(), labels.end(), "mx_se") != labels.end()) {
            t_end = std::min(t_end, noise_limited_end(series.times, series.column("mx"),
                                                      series.column("mx_se"), config.fit.t_start,
                                                      config.fit.noise_k));
        }
    }
    try {
        row.fit = fit_decay(series, "mx", config.fit.t_start, 0.0, t_end);
    } catch (const Error& e) {
        throw Error(e.kind(), "jy = " + std::to_string(config.couplings.jy) + ": " + e.message());
    }
    const LatticeGeometry geom = make_geometry(config.lattice);
    if (auto spec = small_spectrum(config, geom)) {
        row.exact_gap = spec->gap;
        row.exact_odd_gap = spec->odd_gap;
    }
    return row;
}

std::vector<GapRow> gap_sweep(const ExperimentConfig& base, std::span<const double> jy_values) {
    std::vector<GapRow> rows;
    rows.reserve(jy_values.size());
    for (double jy : jy_values) rows.push_back(gap_point(with_jy(base, jy)));
    return rows;
}

std::vector<TrajectoryRecord> run_trajectories(const ExperimentConfig& config) {
    config.validate();
    if (config.method != Method::Homodyne && config.method != Method::Jump) {
        throw Error(ErrorKind::Config, "'method': trajectories need homodyne or jump");
    }
    const LatticeGeometry geom = make_geometry(config.lattice);
    EnsembleSpec spec = ensemble_spec(config, geom);
    spec.options.per_site = true;
    EnsembleOptions eopts;
    eopts.threads = config.threads;
    eopts.keep_records = true;
    return run_ensemble(spec, config.n_traj, config.base_seed, eopts).records;
}

double resolve_t_s(const ExperimentConfig& config) {
    if (config.t_s) return *config.t_s;
    const LatticeGeometry geom = make_geometry(config.lattice);
    ExperimentConfig probe = config;
    probe.exact_gap = true;
    if (auto spec = small_spectrum(probe, geom); spec && spec->gap > 0.0) {
        return std::min(3.0 / spec->gap, 0.5 * config.t_max);
    }
    return 0.1 * config.t_max;
}

BimodalityRow bimodality_point(const ExperimentConfig& config) {
    config.validate();
    if (config.method != Method::Homodyne && config.method != Method::Jump) {
        throw Error(ErrorKind::Config, "'method': bimodality needs homodyne or jump trajectories");
    }
    const LatticeGeometry geom = make_geometry(config.lattice);
    EnsembleOptions eopts;
    eopts.threads = config.threads;
    eopts.keep_records = true;
    const EnsembleResult ens =
        run_ensemble(ensemble_spec(config, geom), config.n_traj, config.base_seed, eopts);

    BimodalityRow row;
    row.jy = config.couplings.jy;
    row.t_s = resolve_t_s(config);
    row.histogram = build_histogram(ens.records, row.t_s, config.n_bins);
    row.b = bimodality(row.histogram);
    row.modes = find_modes(row.histogram);
    return row;
}

std::vector<BimodalityRow> bimodality_sweep(const ExperimentConfig& base,
                                            std::span<const double> jy_values) {
    std::vector<BimodalityRow> rows;
    rows.reserve(jy_values.size());
    for (double jy : jy_values) rows.push_back(bimodality_point(with_jy(base, jy)));
    return rows;
}

LiouvillianSpectrum run_spectrum(const ExperimentConfig& config) {
    config.validate();
    const LatticeGeometry geom = make_geometry(config.lattice);
    const SparseOperator h = build_hamiltonian(geom, config.couplings);
    const SparseOperator l = build_liouvillian(h, config.couplings, geom.n_sites());
    return full_spectrum(l, SpectrumOptions::for_rate(config.couplings.gamma));
}

}  // namespace xyzlind
