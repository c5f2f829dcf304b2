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

#include <utility>
#include <vector>

#include "xyzlind/types.hpp"

namespace xyzlind {

// How coincident periodic bonds (extent 2) are counted.
enum class BondMultiplicity {
    Deduplicate,  // each unordered pair once
    CountWraps,   // wrap-around bond that coincides with an internal one doubles its weight
};

// Unordered nearest-neighbour pair, stored with i < j.
struct Bond {
    int i = 0;
    int j = 0;
    int multiplicity = 1;

    friend bool operator==(const Bond&, const Bond&) = default;
};

/// Sites and nearest-neighbour bonds of a 1D chain or 2D rectangular lattice.
///
/// Sites are indexed row-major, site = x + lx * y. Bonds are sorted by (i, j) and
/// no unordered pair appears twice; coincident wrap bonds are merged according to
/// the BondMultiplicity used at construction. Immutable after construction.
class LatticeGeometry {
public:
    int lx() const noexcept { return lx_; }
    int ly() const noexcept { return ly_; }
    int n_sites() const noexcept { return lx_ * ly_; }
    bool periodic() const noexcept { return periodic_; }
    const std::vector<Bond>& bonds() const noexcept { return bonds_; }

    // Number of bonds touching `site`, counting multiplicity.
    int degree(int site) const;

    // Site reached by translating `site` by (dx, dy) with wrap-around.
    int translate(int site, int dx, int dy) const noexcept;

    friend LatticeGeometry build_chain(int length, bool periodic, BondMultiplicity multiplicity);
    friend LatticeGeometry build_rect(int lx, int ly, bool periodic, BondMultiplicity multiplicity,
                                      int max_sites);
    friend LatticeGeometry single_site();

private:
    LatticeGeometry(int lx, int ly, bool periodic, std::vector<Bond> bonds);

    int lx_ = 1;
    int ly_ = 1;
    bool periodic_ = true;
    std::vector<Bond> bonds_;
};

LatticeGeometry build_chain(int length, bool periodic = true,
                            BondMultiplicity multiplicity = BondMultiplicity::Deduplicate);

LatticeGeometry build_rect(int lx, int ly, bool periodic = true,
                           BondMultiplicity multiplicity = BondMultiplicity::Deduplicate,
                           int max_sites = kDefaultMaxSites);

// One isolated spin without bonds; used for the analytic single-spin checks.
LatticeGeometry single_site();

}  // namespace xyzlind
