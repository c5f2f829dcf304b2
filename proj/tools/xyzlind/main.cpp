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

#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "xyzlind/errors.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void add_config_options(CLI::App* sub, xyzlind::cli::Overrides& o, xyzlind::cli::RunOptions& run) {
    sub->add_option("-c,--config", o.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    sub->add_option("-p,--preset", o.preset, "built-in preset (paper-1d, paper-2d)");
    sub->add_option("--jx", o.jx);
    sub->add_option("--jy", o.jy);
    sub->add_option("--jz", o.jz);
    sub->add_option("--gamma", o.gamma, "dissipation rate");
    sub->add_option("--lx", o.lx);
    sub->add_option("--ly", o.ly);
    sub->add_flag("--open", o.open, "open boundaries instead of periodic");
    sub->add_option("--bond-multiplicity", o.bond_multiplicity, "deduplicate or count_wraps");
    sub->add_option("-m,--method", o.method, "rk4, jump, homodyne or spectrum");
    sub->add_option("--initial-state", o.initial_state, "+x -x +y -y +z -z");
    sub->add_option("--dt", o.dt, "time step in 1/gamma");
    sub->add_option("--t-max", o.t_max, "final time in 1/gamma");
    sub->add_option("--t-s", o.t_s, "histogram discard time");
    sub->add_option("--fit-start", o.fit_start);
    sub->add_option("--fit-end", o.fit_end);
    sub->add_option("-n,--n-traj", o.n_traj, "number of trajectories");
    sub->add_option("--record-every", o.record_every, "record every k-th step");
    sub->add_option("--bins", o.n_bins, "histogram bins");
    sub->add_option("-s,--seed", o.seed, "base seed; trajectory k uses seed + k");
    sub->add_option("-j,--threads", o.threads, "worker threads (0: all cores)");
    sub->add_option("--jy-values", o.jy_values, "jy sweep, comma separated")->delimiter(',');
    sub->add_option("-o,--out", o.out, "output directory");
    sub->add_option("--export-hamiltonian", run.export_hamiltonian, "write the dense Hamiltonian as CSV");
    sub->add_flag("--dump-config", run.dump_config, "print the resolved configuration and exit");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace xyzlind::cli;
    CLI::App app{"xyzlind: dissipative XYZ spin lattices"};
    app.require_subcommand(1);

    Overrides overrides;
    RunOptions run;
    const std::map<std::string, std::pair<std::string, std::function<int(const xyzlind::ExperimentConfig&, const RunOptions&)>>>
        commands{
            {"evolve", {"M^x(t) by rk4 or trajectory ensembles", cmd_evolve}},
            {"gap", {"decay-rate fits over a jy sweep", cmd_gap}},
            {"trajectories", {"single-trajectory M^x_psi(t) records", cmd_trajectories}},
            {"bimodality", {"p(M^x) histograms and bimodality over a jy sweep", cmd_bimodality}},
            {"spectrum", {"full Liouvillian spectrum of a small lattice", cmd_spectrum}},
        };
    for (const auto& [name, entry] : commands) add_config_options(app.add_subcommand(name, entry.first), overrides, run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const auto config = resolve(overrides);
        for (const auto& [name, entry] : commands) {
            if (app.got_subcommand(name)) return entry.second(config, run);
        }
    } catch (const xyzlind::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_numerical() ? kExitNumerical : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}
