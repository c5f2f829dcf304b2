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

// Acceptance suite: one PASS/FAIL line per criterion. Slow criteria need --slow.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dense_oracle.hpp"
#include "xyzlind/analysis.hpp"
#include "xyzlind/errors.hpp"
#include "xyzlind/experiments.hpp"
#include "xyzlind/integrate.hpp"
#include "xyzlind/liouville.hpp"
#include "xyzlind/trajectories.hpp"

using namespace xyzlind;

namespace {

// Tolerances pinned from the acceptance contract.
constexpr double kAnalyticTol = 1e-10;
constexpr double kOracleTol = 1e-6;
constexpr double kOracleTMax = 20.0;
constexpr double kOracleRuntime = 60.0;
constexpr std::size_t kEquivalenceTrajectories = 2000;
constexpr double kSigmaContract = 3.0;
constexpr double kMaxViolationRate = 0.01;
constexpr double kGapRelTol = 0.02;
constexpr double kGaussianB = 1.0 / 3.0;
constexpr double kUniformB = 5.0 / 9.0;
constexpr double kBimodalityTol = 0.002;
constexpr std::size_t kBimodalitySamples = 1000000;
constexpr double kInvariantRuntime = 10.0;
constexpr std::size_t kSlowGapTrajectories = 500;
constexpr double kSignatureDeltaB = 0.2;
constexpr double kSignatureModeM = 0.2;
constexpr std::size_t kSignatureBins = 41;
constexpr double kSaturationRelTol = 0.10;

const Couplings k1d{1.8, 2.2, 2.0, 1.0};
const Couplings k2d{0.9, 1.1, 1.0, 1.0};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

Outcome analytic_spectrum() {
    const auto t0 = std::chrono::steady_clock::now();
    const double gamma = 1.0;
    const SparseOperator h(SparseOperator::Matrix(2, 2));
    const auto spec = full_spectrum(build_liouvillian(h, Couplings{0, 0, 0, gamma}, 1),
                                    SpectrumOptions::for_rate(gamma));
    std::vector<Complex> ev = spec.eigenvalues;
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    const Complex expected[] = {-gamma, -gamma / 2, -gamma / 2, 0.0};
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev[k] - expected[k]));
    const double gap_err = std::abs(spec.gap - gamma / 2);
    const double runtime = seconds_since(t0);
    return {ev.size() == 4 && worst < kAnalyticTol && gap_err < kAnalyticTol && runtime < 1.0,
            fmt("max eigenvalue error %.2e, gap error %.2e, %.3f s", worst, gap_err, runtime)};
}

// ---------------------------------------------------------------- criterion 2

double oracle_mx_error(const LatticeGeometry& g, const Couplings& c) {
    const int n = g.n_sites();
    const auto h = build_hamiltonian(g, c);
    const auto rho0 = product_state(n, Direction::PlusX);
    const double sample_dt = 0.1;
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.t_max = kOracleTMax;
    opts.record_every = 100;
    const std::vector<Observable> obs{mx_observable(n)};
    const auto ts = rk4_evolve(rho0, h, c, opts, obs);

    // Independent reference: exp(L dt) of the dense Kronecker Liouvillian.
    const DenseMatrix l = oracle::liouvillian(h.to_dense(), c.gamma, n);
    const DenseMatrix step = oracle::expm(l * sample_dt);
    const DenseMatrix mx = magnetization_operator(Axis::X, n).to_dense();
    const Eigen::Index d = rho0.matrix.rows();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.matrix.data(), d * d);
    double worst = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k > 0) v = step * v;
        const Eigen::Map<const DenseMatrix> rho(v.data(), d, d);
        const double ref = (rho * mx).trace().real();
        worst = std::max(worst, std::abs(ts.column("mx")[k] - ref));
    }
    return worst;
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::ostringstream parts;
    for (int n : {2, 3}) {
        for (const auto& [label, c] : {std::pair{"1d", k1d}, std::pair{"2d", k2d}}) {
            const double e = oracle_mx_error(build_chain(n), c);
            parts << "N=" << n << '/' << label << ' ' << fmt("%.1e", e) << "; ";
            worst = std::max(worst, e);
        }
    }
    const double runtime = seconds_since(t0);
    return {worst < kOracleTol && runtime < kOracleRuntime,
            parts.str() + fmt("max %.2e over t in [0, %g], %.1f s", worst, kOracleTMax, runtime)};
}

// ---------------------------------------------------------------- criterion 3

struct Violations {
    int bad = 0;
    int total = 0;
    double z2 = 0.0;  // sum of squared z-scores, t > 0
};

Violations compare_to_master(const LatticeGeometry& g, const Couplings& c, Unraveling u,
                             std::uint64_t seed, const std::vector<double>& reference,
                             double t_max, std::size_t record_every) {
    EnsembleSpec spec;
    spec.psi0 = product_pure_state(g.n_sites(), Direction::PlusX);
    spec.h = build_hamiltonian(g, c);
    spec.couplings = c;
    spec.unraveling = u;
    spec.options.dt = 1e-3;
    spec.options.t_max = t_max;
    spec.options.record_every = record_every;
    const auto r = run_ensemble(spec, kEquivalenceTrajectories, seed);
    Violations v;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        // 1e-12 absorbs rounding at t = 0, where every trajectory agrees exactly.
        const double tol = kSigmaContract * (*r.mx.std_error)[k] + 1e-12;
        v.bad += std::abs(r.mx.mean[k] - reference[k]) > tol;
        ++v.total;
        if (k > 0) v.z2 += std::pow((r.mx.mean[k] - reference[k]) / (*r.mx.std_error)[k], 2);
    }
    return v;
}

Outcome unraveling_equivalence() {
    const double t_max = 5.0;
    const std::size_t record_every = 20;
    Violations all;
    std::ostringstream parts;
    struct System {
        const char* name;
        LatticeGeometry geom;
        Couplings c;
    };
    const System systems[] = {{"N=3 chain", build_chain(3), k1d}, {"2x2", build_rect(2, 2), k2d}};
    std::uint64_t seed = 1000;
    for (const auto& s : systems) {
        EvolveOptions opts;
        opts.t_max = t_max;
        opts.record_every = record_every;
        const std::vector<Observable> obs{mx_observable(s.geom.n_sites())};
        const auto ref = rk4_evolve(product_state(s.geom.n_sites(), Direction::PlusX),
                                    build_hamiltonian(s.geom, s.c), s.c, opts, obs)
                             .column("mx");
        for (auto u : {Unraveling::Jump, Unraveling::Homodyne}) {
            const auto v = compare_to_master(s.geom, s.c, u, seed, ref, t_max, record_every);
            seed += 100000;
            parts << s.name << '/' << to_string(u) << ' ' << v.bad << '/' << v.total
                  << fmt(" (rms z %.2f); ", std::sqrt(v.z2 / (v.total - 1)));
            all.bad += v.bad;
            all.total += v.total;
        }
    }
    const double rate = double(all.bad) / all.total;
    return {rate < kMaxViolationRate,
            parts.str() + fmt("3-sigma violations %d/%d = %.2f%% (N_T = %zu each)", all.bad,
                              all.total, 100 * rate, kEquivalenceTrajectories)};
}

// ---------------------------------------------------------------- criterion 4

Outcome gap_benchmark() {
    struct Point {
        LatticeSpec lattice;
        Couplings c;
    };
    std::vector<Point> points;
    for (double jy : {2.0, 2.2, 2.4}) points.push_back({{4, 1, true, BondMultiplicity::Deduplicate}, {1.8, jy, 2.0, 1.0}});
    for (double jy : {1.0, 1.1, 1.2}) points.push_back({{2, 2, true, BondMultiplicity::Deduplicate}, {0.9, jy, 1.0, 1.0}});
    bool pass = true;
    std::ostringstream parts;
    for (const auto& p : points) {
        ExperimentConfig cfg;
        cfg.lattice = p.lattice;
        cfg.couplings = p.c;
        cfg.method = Method::Rk4;
        cfg.t_max = 40.0;
        cfg.record_every = 100;
        parts << p.lattice.lx << 'x' << p.lattice.ly << " jy=" << p.c.jy << ": ";
        try {
            const GapRow row = gap_point(cfg);
            const double rel = std::abs(row.fit.lambda_fit - *row.exact_gap) / *row.exact_gap;
            pass &= rel < kGapRelTol;
            parts << fmt("fit %.5f exact %.5f (%.2f%%); ", row.fit.lambda_fit, *row.exact_gap, 100 * rel);
        } catch (const Error& e) {
            pass = false;
            parts << "error: " << e.what() << "; ";
        }
    }
    return {pass, parts.str() + fmt("tolerance %.0f%%", 100 * kGapRelTol)};
}

// ---------------------------------------------------------------- criterion 6

Outcome bimodality_endpoints() {
    std::mt19937_64 rng(20180601);
    std::vector<double> samples(kBimodalitySamples);
    std::normal_distribution<double> normal(0.0, 0.25);
    for (auto& s : samples) s = normal(rng);
    const double gauss = bimodality(samples);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (auto& s : samples) s = uniform(rng);
    const double unif = bimodality(samples);
    for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = k % 2 ? 0.37 : -0.37;
    const double delta = bimodality(samples);
    const bool pass = std::abs(gauss - kGaussianB) < kBimodalityTol &&
                      std::abs(unif - kUniformB) < kBimodalityTol && delta == 1.0;
    return {pass, fmt("gaussian %.5f (1/3), uniform %.5f (5/9), two deltas %.17g (1 exactly)", gauss,
                      unif, delta)};
}

// ---------------------------------------------------------------- criterion 8

Outcome invariant_suite() {
    std::ostringstream parts;
    bool pass = true;
    auto timed = [&](const char* name, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto [ok, what] = body();
        const double dt = seconds_since(t0);
        const bool good = ok && dt < kInvariantRuntime;
        pass &= good;
        parts << name << (good ? " ok" : " FAILED") << " (" << what << fmt(", %.2f s); ", dt);
    };

    timed("trace/hermiticity", [] {
        const auto h = build_hamiltonian(build_rect(2, 2), k2d);
        std::mt19937_64 rng(3);
        const DensityMatrix rho0{4, oracle::random_density(16, rng)};
        EvolveOptions opts;
        opts.t_max = 5.0;
        opts.record_every = 50;
        double herm = 0.0, trace = 0.0;
        opts.on_record = [&](double, const DensityMatrix& rho) {
            herm = std::max(herm, (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff());
            trace = std::max(trace, std::abs(rho.matrix.trace() - 1.0));
        };
        rk4_evolve(rho0, h, k2d, opts, {});
        return std::pair{herm < 1e-10 && trace < 1e-9 * opts.t_max,
                         fmt("herm %.1e, trace %.1e", herm, trace)};
    });

    timed("Z2 covariance", [] {
        const int n = 3;
        const auto h = build_hamiltonian(build_chain(n), k1d);
        const DenseMatrix u = z2_operator(n).to_dense();
        const auto plus = product_state(n, Direction::PlusX);
        const DensityMatrix flipped{n, u * plus.matrix * u.adjoint()};
        EvolveOptions opts;
        opts.t_max = 5.0;
        opts.record_every = 50;
        const std::vector<Observable> obs{mx_observable(n)};
        const auto a = rk4_evolve(plus, h, k1d, opts, obs).column("mx");
        const auto b = rk4_evolve(flipped, h, k1d, opts, obs).column("mx");
        const auto z = rk4_evolve(product_state(n, Direction::MinusZ), h, k1d, opts, obs).column("mx");
        double cov = 0.0, sym = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            cov = std::max(cov, std::abs(a[k] + b[k]));
            sym = std::max(sym, std::abs(z[k]));
        }
        return std::pair{cov < 1e-12 && sym < 1e-9, fmt("flip %.1e, symmetric %.1e", cov, sym)};
    });

    timed("trajectory norm/determinism", [] {
        const auto h = build_hamiltonian(build_rect(2, 2), k2d);
        const auto heff = build_effective_hamiltonian(h, k2d, 4);
        TrajectoryOptions o;
        o.dt = 1e-3;
        o.t_max = 5.0;
        o.record_every = 10;
        o.keep_final_state = true;
        o.per_site = true;
        const auto psi0 = product_pure_state(4, Direction::PlusX);
        double norm_err = 0.0, bound = 0.0;
        bool same = true;
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto j1 = mcwf_trajectory(psi0, heff, k2d, o, seed);
            const auto j2 = mcwf_trajectory(psi0, heff, k2d, o, seed);
            const auto h1 = homodyne_trajectory(psi0, h, k2d, o, seed);
            const auto h2 = homodyne_trajectory(psi0, h, k2d, o, seed);
            same &= j1.mx_psi == j2.mx_psi && j1.jump_times == j2.jump_times && j1.site_mx == j2.site_mx;
            same &= h1.mx_psi == h2.mx_psi && h1.site_mx == h2.site_mx;
            same &= *j1.final_state == *j2.final_state && *h1.final_state == *h2.final_state;
            for (const auto* r : {&j1, &h1}) {
                norm_err = std::max(norm_err, std::abs(r->final_state->norm() - 1.0));
                for (double m : r->mx_psi) bound = std::max(bound, std::abs(m));
            }
        }
        return std::pair{same && norm_err < 1e-12 && bound <= 1.0 + 1e-12,
                         fmt("norm %.1e, max |mx_psi| %.3f, bit-identical %s", norm_err, bound,
                             same ? "yes" : "no")};
    });

    timed("matrix-free vs dense", [] {
        std::mt19937_64 rng(4);
        const Axis axes[] = {Axis::X, Axis::Y, Axis::Z, Axis::Plus, Axis::Minus};
        const char symbols[] = {'x', 'y', 'z', '+', '-'};
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 200; ++trial) {
                std::vector<PauliFactor> factors;
                DenseMatrix dense = DenseMatrix::Identity(hilbert_dim(n), hilbert_dim(n));
                for (int s = 0; s < n; ++s) {
                    const int pick = static_cast<int>(rng() % 6);
                    if (pick == 5) continue;
                    factors.push_back({s, axes[pick]});
                    dense = dense * oracle::embed(oracle::single_site(symbols[pick]), s, n);
                }
                const StateVector psi = oracle::random_state(hilbert_dim(n), rng);
                const StateVector got = apply_pauli_string(PauliString(1.0, factors), psi, n);
                worst = std::max(worst, (got - dense * psi).cwiseAbs().maxCoeff());
            }
        }
        for (const auto& g : {build_chain(2), build_chain(3), build_chain(4), build_rect(2, 2)}) {
            std::vector<std::pair<int, int>> bonds;
            for (const auto& b : g.bonds()) bonds.emplace_back(b.i, b.j);
            const DenseMatrix ref = oracle::hamiltonian(bonds, k2d.jx, k2d.jy, k2d.jz, g.n_sites());
            worst = std::max(worst, (build_hamiltonian(g, k2d).to_dense() - ref).cwiseAbs().maxCoeff());
        }
        return std::pair{worst < 1e-12, fmt("max deviation %.1e", worst)};
    });
    return {pass, parts.str()};
}

// ---------------------------------------------------------------- criterion 5 (slow)

// Decay rate from an ensemble of records, with a delete-one-group jackknife error.
struct EnsembleFit {
    double lambda = 0.0;
    double sigma = 0.0;
    double t_end = 0.0;
};

EnsembleFit jackknife_fit(const std::vector<TrajectoryRecord>& recs, double t_start, int groups) {
    const std::size_t len = recs.front().mx_psi.size();
    const auto& times = recs.front().times;
    auto mean_excluding = [&](int skip) {
        std::vector<double> m(len, 0.0);
        std::size_t count = 0;
        for (std::size_t k = 0; k < recs.size(); ++k) {
            if (skip >= 0 && int(k % groups) == skip) continue;
            for (std::size_t i = 0; i < len; ++i) m[i] += recs[k].mx_psi[i];
            ++count;
        }
        for (auto& v : m) v /= double(count);
        return m;
    };
    const auto full = mean_excluding(-1);
    std::vector<double> se(len, 0.0);
    for (const auto& r : recs) {
        for (std::size_t i = 0; i < len; ++i) se[i] += (r.mx_psi[i] - full[i]) * (r.mx_psi[i] - full[i]);
    }
    const double n = double(recs.size());
    for (auto& v : se) v = std::sqrt(v / (n - 1) / n);
    EnsembleFit out;
    out.t_end = noise_limited_end(times, full, se, t_start);
    out.lambda = fit_decay(times, full, t_start, 0.0, out.t_end).lambda_fit;
    double acc = 0.0, mean = 0.0;
    std::vector<double> partial;
    for (int g = 0; g < groups; ++g) {
        partial.push_back(fit_decay(times, mean_excluding(g), t_start, 0.0, out.t_end).lambda_fit);
        mean += partial.back() / groups;
    }
    for (double p : partial) acc += (p - mean) * (p - mean);
    out.sigma = std::sqrt(double(groups - 1) / groups * acc);
    return out;
}

Outcome gap_minimum() {
    bool pass = true;
    std::ostringstream parts;

    // 2x2: exact gaps over the sweep. Near jx = jy the slowest mode is oscillatory and a
    // single-exponential fit is undefined, so the rk4 fit only sets the error at the minimum.
    ExperimentConfig two = preset("paper-2d");
    two.method = Method::Spectrum;
    const std::vector<double> jy2{0.9, 1.0, 1.05, 1.1, 1.15, 1.2, 1.3, 1.4, 1.5, 1.6};
    std::vector<double> exact2;
    for (double jy : jy2) exact2.push_back(run_spectrum(with_jy(two, jy)).gap);
    const std::size_t arg2 = std::size_t(std::min_element(exact2.begin(), exact2.end()) - exact2.begin());
    const bool interior = arg2 > 0 && arg2 + 1 < exact2.size();
    pass &= interior;
    two.method = Method::Rk4;
    two.t_max = 40.0;
    const GapRow fit2 = gap_point(with_jy(two, jy2[arg2]));
    const double min2 = exact2[arg2];
    const double err2 = std::abs(fit2.fit.lambda_fit - min2);
    parts << "2x2 lambda(jy):";
    for (std::size_t k = 0; k < jy2.size(); ++k) parts << fmt(" %.2f:%.4f", jy2[k], exact2[k]);
    parts << fmt("; min %.4f at jy=%.2f (%s, rk4 fit %.4f); ", min2, jy2[arg2],
                 interior ? "interior" : "at edge", fit2.fit.lambda_fit);

    // 3x3: MCWF ensembles.
    double min3 = 1e300, sig3 = 0.0, arg3 = 0.0;
    for (double jy : {1.0, 1.05, 1.1, 1.15, 1.2}) {
        EnsembleSpec spec;
        spec.psi0 = product_pure_state(9, Direction::PlusX);
        spec.couplings = {0.9, jy, 1.0, 1.0};
        spec.h = build_hamiltonian(build_rect(3, 3), spec.couplings);
        spec.unraveling = Unraveling::Jump;
        spec.options.dt = 1e-3;
        spec.options.t_max = 25.0;
        spec.options.record_every = 50;
        EnsembleOptions eo;
        eo.keep_records = true;
        const auto ens = run_ensemble(spec, kSlowGapTrajectories, 500000, eo);
        EnsembleFit fit;
        try {
            fit = jackknife_fit(ens.records, 5.0, 10);
        } catch (const Error& e) {
            parts << fmt("3x3 jy=%.2f no fit (%s); ", jy, e.message().c_str());
            continue;
        }
        parts << fmt("3x3 jy=%.2f %.4f+-%.4f [5, %.1f]; ", jy, fit.lambda, fit.sigma, fit.t_end);
        if (fit.lambda < min3) {
            min3 = fit.lambda;
            sig3 = fit.sigma;
            arg3 = jy;
        }
    }
    const double combined = std::sqrt(err2 * err2 + sig3 * sig3);
    const bool smaller = min2 - min3 > 2.0 * combined;
    pass &= smaller;
    parts << fmt("min 3x3 %.4f (jy=%.2f) vs min 2x2 %.4f: margin %.4f vs 2 x combined error %.4f (N_T = %zu)",
                 min3, arg3, min2, min2 - min3, 2.0 * combined, kSlowGapTrajectories);
    return {pass, parts.str()};
}

// ---------------------------------------------------------------- criterion 7 (slow)

Outcome transition_signature() {
    std::ostringstream parts;
    BimodalityRow rows[2];
    const double jys[2] = {0.95, 1.25};
    for (int k = 0; k < 2; ++k) {
        ExperimentConfig c = preset("paper-2d");
        c.lattice = {3, 3, true, BondMultiplicity::Deduplicate};
        c.couplings.jy = jys[k];
        c.method = Method::Homodyne;
        c.dt = 1e-3;
        c.t_max = 1000.0;
        c.n_traj = 16;
        c.base_seed = 7000;
        c.record_every = 100;
        c.n_bins = kSignatureBins;
        rows[k] = bimodality_point(c);
        parts << fmt("jy=%.2f: b=%.4f, t_s=%.0f, samples %zu, tau_int %.0f, modes", jys[k], rows[k].b,
                     rows[k].t_s, rows[k].histogram.sample_count, rows[k].histogram.autocorrelation_time);
        for (double m : rows[k].modes) parts << fmt(" %+.3f", m);
        parts << "; ";
    }
    const double db = rows[1].b - rows[0].b;
    const bool monomodal = rows[0].modes.size() == 1;
    const bool bimodal = rows[1].modes.size() == 2 && rows[1].modes[1] > kSignatureModeM &&
                         rows[1].modes[0] < -kSignatureModeM;
    parts << fmt("delta b = %.4f (> %.1f), 0.95 monomodal %s, 1.25 bimodal beyond %.1f %s", db,
                 kSignatureDeltaB, monomodal ? "yes" : "no", kSignatureModeM, bimodal ? "yes" : "no");
    return {db > kSignatureDeltaB && monomodal && bimodal, parts.str()};
}

// ---------------------------------------------------------------- criterion 9 (slow)

Outcome chain_saturation() {
    double lambda[2];
    std::ostringstream parts;
    const int lengths[2] = {8, 10};
    for (int k = 0; k < 2; ++k) {
        ExperimentConfig c = preset("paper-1d");
        c.lattice = {lengths[k], 1, true, BondMultiplicity::Deduplicate};
        c.method = Method::Rk4;
        c.dt = 1e-2;
        c.t_max = 30.0;
        c.record_every = 10;
        const auto row = gap_point(c);
        lambda[k] = row.fit.lambda_fit;
        parts << fmt("%dx1 lambda %.5f (r2 %.6f); ", lengths[k], lambda[k], row.fit.r_squared);
    }
    const double rel = std::abs(lambda[1] - lambda[0]) / lambda[1];
    parts << fmt("relative difference %.2f%% (< %.0f%%)", 100 * rel, 100 * kSaturationRelTol);
    return {rel < kSaturationRelTol, parts.str()};
}

struct Criterion {
    int id;
    const char* name;
    bool slow;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xyzlind acceptance suite"};
    bool slow = false, only_slow = false;
    std::vector<int> only;
    app.add_flag("--slow", slow, "also run the multi-hour criteria");
    app.add_flag("--only-slow", only_slow, "skip the fast criteria");
    app.add_option("--only", only, "run just these criterion numbers");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "analytic single-spin spectrum", false, analytic_spectrum},
        {2, "rk4 vs dense matrix exponential", false, oracle_equivalence},
        {3, "unraveling equivalence", false, unraveling_equivalence},
        {4, "fitted gap vs exact diagonalisation", false, gap_benchmark},
        {5, "gap minimum shrinks with lattice size", true, gap_minimum},
        {6, "bimodality endpoints", false, bimodality_endpoints},
        {7, "transition signature in 3x3 homodyne", true, transition_signature},
        {8, "invariant suite", false, invariant_suite},
        {9, "1D decay-rate saturation", true, chain_saturation},
    };

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        if (only.empty() && ((c.slow && !slow) || (!c.slow && only_slow))) {
            std::printf("SKIP %d %s (slow tier, pass --slow)\n", c.id, c.name);
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        ++ran;
        failed += !o.pass;
        std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
