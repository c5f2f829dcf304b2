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

#include <benchmark/benchmark.h>

#include "xyzlind/integrate.hpp"
#include "xyzlind/trajectories.hpp"

using namespace xyzlind;

namespace {

const Couplings k2d{0.9, 1.1, 1.0, 1.0};

LatticeGeometry square(int side) { return side == 2 ? build_rect(2, 2) : build_rect(side, side); }

void BM_HamiltonianApply(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const auto g = square(side);
    const auto h = build_hamiltonian(g, k2d);
    const StateVector psi = product_pure_state(g.n_sites(), Direction::PlusX).amplitudes;
    StateVector out;
    for (auto _ : state) {
        out.noalias() = h.matrix() * psi;
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * h.nonzeros());
}
BENCHMARK(BM_HamiltonianApply)->Arg(2)->Arg(3)->Arg(4);

void BM_PauliStringApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PauliString ps(1.0, {{0, Axis::X}, {1, Axis::Y}, {n - 1, Axis::Z}});
    const StateVector psi = product_pure_state(n, Direction::PlusX).amplitudes;
    for (auto _ : state) benchmark::DoNotOptimize(apply_pauli_string(ps, psi, n));
}
BENCHMARK(BM_PauliStringApply)->Arg(9)->Arg(16);

void BM_Rk4Step(benchmark::State& state) {
    const int len = static_cast<int>(state.range(0));
    const auto g = build_chain(len);
    const Couplings c{1.8, 2.2, 2.0, 1.0};
    LindbladPropagator prop(build_hamiltonian(g, c), c, len);
    DenseMatrix rho = product_state(len, Direction::PlusX).matrix;
    for (auto _ : state) {
        prop.step(rho, 1e-4);
        benchmark::DoNotOptimize(rho.data());
    }
}
BENCHMARK(BM_Rk4Step)->Arg(4)->Arg(6)->Arg(8);

void BM_TrajectoryUnitTime(benchmark::State& state) {
    const auto unraveling = static_cast<Unraveling>(state.range(0));
    const auto g = build_rect(3, 3);
    const auto h = build_hamiltonian(g, k2d);
    const auto heff = build_effective_hamiltonian(h, k2d, 9);
    const auto psi0 = product_pure_state(9, Direction::PlusX);
    TrajectoryOptions o;
    o.dt = 1e-3;
    o.t_max = 0.1;
    o.record_every = 100;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto r = unraveling == Unraveling::Jump ? mcwf_trajectory(psi0, heff, k2d, o, ++seed)
                                                : homodyne_trajectory(psi0, h, k2d, o, ++seed);
        benchmark::DoNotOptimize(r.mx_psi.data());
    }
    state.SetLabel(std::string(to_string(unraveling)) + ", 3x3, 100 steps");
}
BENCHMARK(BM_TrajectoryUnitTime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
