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

#include "xyzlind/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "xyzlind/errors.hpp"
#include "xyzlind/rng.hpp"

namespace xyzlind {

std::string_view to_string(Unraveling u) noexcept {
    return u == Unraveling::Jump ? "jump" : "homodyne";
}

namespace {

// psi <- sum_{k<=4} (dt A)^k / k! psi with A = -i H_eff, evaluated in Horner form.
class TaylorPropagator {
public:
    explicit TaylorPropagator(const SparseOperator& h_eff)
        : generator_(Complex(0.0, -1.0) * h_eff.matrix()) {}

    void step(StateVector& psi, double dt) {
        acc_ = psi;
        for (int k = 4; k >= 1; --k) {
            tmp_.noalias() = generator_ * acc_;
            acc_ = psi + (dt / k) * tmp_;
        }
        psi.swap(acc_);
    }

private:
    SparseOperator::Matrix generator_;
    StateVector acc_, tmp_;
};

void check_common(const PureState& psi0, const SparseOperator& op, const Couplings& c,
                  const TrajectoryOptions& o) {
    c.validate();
    if (!(o.dt > 0.0) || !(o.t_max > 0.0) || o.record_every == 0) {
        throw Error(ErrorKind::Config, "trajectory needs dt > 0, t_max > 0, record_every >= 1");
    }
    if (psi0.amplitudes.size() != op.dim() ||
        static_cast<BasisIndex>(op.dim()) != hilbert_dim(psi0.n_sites)) {
        throw Error(ErrorKind::DimensionMismatch, "initial state and operator dimensions differ");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::Config, "initial state is not normalised");
    }
}

std::size_t step_count(const TrajectoryOptions& o) {
    return static_cast<std::size_t>(std::ceil(o.t_max / o.dt - 1e-9));
}

class Recorder {
public:
    Recorder(TrajectoryRecord& rec, int n_sites, const TrajectoryOptions& o, std::size_t n_steps)
        : rec_(rec), n_(n_sites), o_(o), n_steps_(n_steps) {
        const std::size_t n_rec = n_steps / o.record_every + 2;
        rec_.times.reserve(n_rec);
        rec_.mx_psi.reserve(n_rec);
        rec_.mz_psi.reserve(n_rec);
        if (o.per_site) rec_.site_mx.assign(n_sites, {});
    }

    bool due(std::size_t step) const {
        return step == 0 || step % o_.record_every == 0 || step == n_steps_;
    }

    // psi must be normalised; sx may carry precomputed <sigma^x_j>.
    void record(std::size_t step, const StateVector& psi, const std::vector<double>* sx = nullptr) {
        rec_.times.push_back(double(step) * o_.dt);
        double mx = 0.0, mz = 0.0;
        for (int j = 0; j < n_; ++j) {
            const double s = sx ? (*sx)[j] : kernels::expect_sigma_x(j, psi);
            mx += s;
            mz += kernels::expect_sigma_z(j, psi);
            if (o_.per_site) rec_.site_mx[j].push_back(s);
        }
        rec_.mx_psi.push_back(std::clamp(mx / n_, -1.0, 1.0));
        rec_.mz_psi.push_back(std::clamp(mz / n_, -1.0, 1.0));
    }

private:
    TrajectoryRecord& rec_;
    int n_;
    const TrajectoryOptions& o_;
    std::size_t n_steps_;
};

}  // namespace

TrajectoryRecord mcwf_trajectory(const PureState& psi0, const SparseOperator& h_eff,
                                 const Couplings& c, const TrajectoryOptions& options,
                                 std::uint64_t seed) {
    check_common(psi0, h_eff, c, options);
    const int n = psi0.n_sites;
    const std::size_t n_steps = step_count(options);

    Philox4x32 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    TaylorPropagator prop(h_eff);

    TrajectoryRecord rec;
    rec.seed = seed;
    Recorder recorder(rec, n, options, n_steps);

    StateVector psi = psi0.amplitudes;
    StateVector normalised = psi;
    StateVector jumped(psi.size());
    std::vector<double> weights(n);
    double threshold = uniform(rng);

    recorder.record(0, psi);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        prop.step(psi, options.dt);
        const double norm2 = psi.squaredNorm();
        if (!std::isfinite(norm2)) {
            throw Error(ErrorKind::Divergence, "non-finite state at step " + std::to_string(step));
        }
        if (c.gamma > 0.0 && norm2 <= threshold) {
            double total = 0.0;
            for (int j = 0; j < n; ++j) {
                weights[j] = kernels::up_population(j, psi);
                total += weights[j];
            }
            if (!(total > 0.0)) {
                throw Error(ErrorKind::InternalConsistency,
                            "jump requested but every channel has zero weight at step " +
                                std::to_string(step));
            }
            const double pick = uniform(rng) * total;
            int site = n - 1;
            double cumulative = 0.0;
            for (int j = 0; j < n; ++j) {
                cumulative += weights[j];
                if (pick < cumulative) {
                    site = j;
                    break;
                }
            }
            kernels::apply_lowering(site, psi, jumped);
            psi = jumped / std::sqrt(weights[site]);
            rec.jump_times.push_back(double(step) * options.dt);
            rec.jump_sites.push_back(site);
            threshold = uniform(rng);
        }
        if (recorder.due(step)) {
            normalised = psi / psi.norm();
            recorder.record(step, normalised);
        }
    }
    if (options.keep_final_state) rec.final_state = psi / psi.norm();
    return rec;
}

TrajectoryRecord homodyne_trajectory(const PureState& psi0, const SparseOperator& h,
                                     const Couplings& c, const TrajectoryOptions& options,
                                     std::uint64_t seed) {
    check_common(psi0, h, c, options);
    const int n = psi0.n_sites;
    const std::size_t n_steps = step_count(options);
    const double dt = options.dt;
    const double sqrt_gamma = std::sqrt(c.gamma);

    Philox4x32 rng(seed);
    std::normal_distribution<double> wiener(0.0, std::sqrt(dt));
    TaylorPropagator prop(build_effective_hamiltonian(h, c, n));

    TrajectoryRecord rec;
    rec.seed = seed;
    Recorder recorder(rec, n, options, n_steps);

    StateVector psi = psi0.amplitudes;
    StateVector next(psi.size());
    std::vector<double> sx(n);
    const auto dim = static_cast<BasisIndex>(psi.size());

    for (int j = 0; j < n; ++j) sx[j] = kernels::expect_sigma_x(j, psi);
    recorder.record(0, psi, &sx);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        next = psi;
        prop.step(next, dt);
        if (c.gamma > 0.0) {
            Complex scalar{};
            for (int j = 0; j < n; ++j) {
                const double dw = wiener(rng);
                const double s = sx[j];
                const double lower_coef = sqrt_gamma * dw + 0.5 * c.gamma * s * dt;
                scalar += -0.5 * sqrt_gamma * s * dw - 0.125 * c.gamma * s * s * dt;
                const BasisIndex bit = BasisIndex{1} << j;
                for (BasisIndex x = 0; x < dim; ++x) {
                    if (!(x & bit)) next[x] += lower_coef * psi[x | bit];
                }
            }
            next += scalar * psi;
        }
        const double norm = next.norm();
        if (!std::isfinite(norm)) {
            throw Error(ErrorKind::Divergence, "non-finite state at step " + std::to_string(step));
        }
        if (norm < 1e-6) {
            throw Error(ErrorKind::StepSize, "state norm collapsed to " + std::to_string(norm) +
                                                 " at step " + std::to_string(step) +
                                                 "; reduce dt");
        }
        psi = next / norm;
        for (int j = 0; j < n; ++j) sx[j] = kernels::expect_sigma_x(j, psi);
        if (recorder.due(step)) recorder.record(step, psi, &sx);
    }
    if (options.keep_final_state) rec.final_state = psi;
    return rec;
}

namespace {

SeriesStats reduce(const std::vector<TrajectoryRecord>& records,
                   std::vector<double> TrajectoryRecord::*field) {
    const std::size_t n = records.size();
    const std::size_t len = (records.front().*field).size();
    SeriesStats stats;
    stats.mean.assign(len, 0.0);
    for (const auto& r : records) {
        const auto& v = r.*field;
        for (std::size_t t = 0; t < len; ++t) stats.mean[t] += v[t];
    }
    for (auto& m : stats.mean) m /= double(n);
    if (n > 1) {
        std::vector<double> se(len, 0.0);
        for (const auto& r : records) {
            const auto& v = r.*field;
            for (std::size_t t = 0; t < len; ++t) {
                const double d = v[t] - stats.mean[t];
                se[t] += d * d;
            }
        }
        for (auto& s : se) s = std::sqrt(s / double(n - 1) / double(n));
        stats.std_error = std::move(se);
    }
    return stats;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec, std::size_t n_traj, std::uint64_t base_seed,
                            const EnsembleOptions& options) {
    if (n_traj == 0) throw Error(ErrorKind::Config, "ensemble needs at least one trajectory");
    TrajectoryOptions traj_opts = spec.options;
    if (options.reconstruct_final) traj_opts.keep_final_state = true;

    SparseOperator h_eff;
    if (spec.unraveling == Unraveling::Jump) {
        h_eff = build_effective_hamiltonian(spec.h, spec.couplings, spec.psi0.n_sites);
    }

    std::vector<TrajectoryRecord> records(n_traj);
    std::vector<std::exception_ptr> failures(n_traj);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n_traj; k = next++) {
            try {
                const std::uint64_t seed = base_seed + k;
                records[k] = spec.unraveling == Unraveling::Jump
                                 ? mcwf_trajectory(spec.psi0, h_eff, spec.couplings, traj_opts, seed)
                                 : homodyne_trajectory(spec.psi0, spec.h, spec.couplings, traj_opts,
                                                       seed);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_traj)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (std::size_t k = 0; k < n_traj; ++k) {
        if (!failures[k]) continue;
        try {
            std::rethrow_exception(failures[k]);
        } catch (const Error& e) {
            throw Error(e.kind(), "trajectory " + std::to_string(k) + " (seed " +
                                      std::to_string(base_seed + k) + "): " + e.message());
        }
    }

    EnsembleResult out;
    out.n_traj = n_traj;
    out.base_seed = base_seed;
    out.generator = std::string(Philox4x32::name);
    out.times = records.front().times;
    out.mx = reduce(records, &TrajectoryRecord::mx_psi);
    out.mz = reduce(records, &TrajectoryRecord::mz_psi);
    if (options.reconstruct_final) {
        const auto dim = spec.psi0.amplitudes.size();
        DenseMatrix rho = DenseMatrix::Zero(dim, dim);
        for (const auto& r : records) rho.noalias() += (*r.final_state) * r.final_state->adjoint();
        rho /= double(n_traj);
        out.final_density = DensityMatrix{spec.psi0.n_sites, std::move(rho)};
    }
    if (options.keep_records) {
        out.records = std::move(records);
    }
    return out;
}

}  // namespace xyzlind
