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

#include "xyzlind/lattice.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "xyzlind/errors.hpp"

namespace xyzlind {

namespace {

// Merges raw directed bond candidates into the canonical sorted list.
std::vector<Bond> canonical_bonds(const std::vector<std::pair<int, int>>& raw,
                                  BondMultiplicity multiplicity) {
    std::map<std::pair<int, int>, int> counts;
    for (auto [a, b] : raw) {
        if (a == b) continue;
        counts[{std::min(a, b), std::max(a, b)}] += 1;
    }
    std::vector<Bond> bonds;
    bonds.reserve(counts.size());
    for (const auto& [pair, count] : counts) {
        const int weight = multiplicity == BondMultiplicity::CountWraps ? count : 1;
        bonds.push_back(Bond{pair.first, pair.second, weight});
    }
    return bonds;
}

}  // namespace

LatticeGeometry::LatticeGeometry(int lx, int ly, bool periodic, std::vector<Bond> bonds)
    : lx_(lx), ly_(ly), periodic_(periodic), bonds_(std::move(bonds)) {}

int LatticeGeometry::degree(int site) const {
    if (site < 0 || site >= n_sites()) {
        throw Error(ErrorKind::Index, "site " + std::to_string(site) + " outside lattice");
    }
    int d = 0;
    for (const auto& b : bonds_) {
        if (b.i == site || b.j == site) d += b.multiplicity;
    }
    return d;
}

int LatticeGeometry::translate(int site, int dx, int dy) const noexcept {
    const int x = site % lx_;
    const int y = site / lx_;
    const int nx = ((x + dx) % lx_ + lx_) % lx_;
    const int ny = ((y + dy) % ly_ + ly_) % ly_;
    return nx + lx_ * ny;
}

LatticeGeometry build_chain(int length, bool periodic, BondMultiplicity multiplicity) {
    if (length < 2) {
        throw Error(ErrorKind::InvalidGeometry,
                    "chain length must be at least 2, got " + std::to_string(length));
    }
    return build_rect(length, 1, periodic, multiplicity, std::max(length, kDefaultMaxSites));
}

LatticeGeometry build_rect(int lx, int ly, bool periodic, BondMultiplicity multiplicity,
                           int max_sites) {
    if (lx < 2 || ly < 1) {
        throw Error(ErrorKind::InvalidGeometry, "rectangle needs lx >= 2 and ly >= 1, got " +
                                                    std::to_string(lx) + "x" + std::to_string(ly));
    }
    if (lx * ly > max_sites) {
        throw Error(ErrorKind::Size, std::to_string(lx) + "x" + std::to_string(ly) +
                                         " exceeds the configured maximum of " +
                                         std::to_string(max_sites) + " sites");
    }
    std::vector<std::pair<int, int>> raw;
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            const int s = x + lx * y;
            if (x + 1 < lx) {
                raw.emplace_back(s, s + 1);
            } else if (periodic) {
                raw.emplace_back(s, lx * y);
            }
            if (y + 1 < ly) {
                raw.emplace_back(s, s + lx);
            } else if (periodic) {
                raw.emplace_back(s, x);
            }
        }
    }
    return LatticeGeometry(lx, ly, periodic, canonical_bonds(raw, multiplicity));
}

LatticeGeometry single_site() { return LatticeGeometry(1, 1, false, {}); }

}  // namespace xyzlind
