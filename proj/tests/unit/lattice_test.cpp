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

#include <gtest/gtest.h>

#include <set>

#include "xyzlind/errors.hpp"
#include "xyzlind/lattice.hpp"

namespace xyzlind {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

Pairs pairs(const LatticeGeometry& g) {
    Pairs out;
    for (const auto& b : g.bonds()) out.emplace_back(b.i, b.j);
    return out;
}

TEST(Lattice, PeriodicChainOfFour) {
    EXPECT_EQ(pairs(build_chain(4, true)), (Pairs{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
}

TEST(Lattice, ChainOfTwoDeduplicatesWrapBond) {
    const auto g = build_chain(2, true);
    EXPECT_EQ(pairs(g), (Pairs{{0, 1}}));
    EXPECT_EQ(g.bonds()[0].multiplicity, 1);
}

TEST(Lattice, OpenChain) { EXPECT_EQ(pairs(build_chain(3, false)), (Pairs{{0, 1}, {1, 2}})); }

TEST(Lattice, ShortChainRejected) {
    try {
        build_chain(1, true);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidGeometry);
    }
}

TEST(Lattice, ThreeByThreeHasDegreeFour) {
    const auto g = build_rect(3, 3, true);
    EXPECT_EQ(g.bonds().size(), 18u);
    for (int s = 0; s < 9; ++s) EXPECT_EQ(g.degree(s), 4);
}

TEST(Lattice, TwoByTwoDeduplicates) {
    EXPECT_EQ(pairs(build_rect(2, 2, true)), (Pairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

TEST(Lattice, TwoByTwoCountWrapsDoublesWeights) {
    const auto g = build_rect(2, 2, true, BondMultiplicity::CountWraps);
    ASSERT_EQ(g.bonds().size(), 4u);
    for (const auto& b : g.bonds()) EXPECT_EQ(b.multiplicity, 2);
    EXPECT_EQ(g.degree(0), 4);
}

TEST(Lattice, DegenerateRectEqualsChain) {
    EXPECT_EQ(build_rect(4, 1, true).bonds(), build_chain(4, true).bonds());
}

TEST(Lattice, OversizedRejected) {
    try {
        build_rect(5, 4, true);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Size);
    }
}

TEST(Lattice, SingleSiteHasNoBonds) {
    const auto g = single_site();
    EXPECT_EQ(g.n_sites(), 1);
    EXPECT_TRUE(g.bonds().empty());
}

// Invariants over a range of shapes and both boundary conditions.
TEST(Lattice, StructuralInvariants) {
    for (int lx = 2; lx <= 5; ++lx) {
        for (int ly = 1; ly <= 3; ++ly) {
            for (bool periodic : {true, false}) {
                const auto g = build_rect(lx, ly, periodic);
                const int n = g.n_sites();
                std::set<std::pair<int, int>> seen;
                int degree_sum = 0;
                for (const auto& b : g.bonds()) {
                    EXPECT_GE(b.i, 0);
                    EXPECT_LT(b.j, n);
                    EXPECT_LT(b.i, b.j);
                    EXPECT_TRUE(seen.insert({b.i, b.j}).second);
                }
                for (int s = 0; s < n; ++s) degree_sum += g.degree(s);
                EXPECT_EQ(degree_sum, 2 * static_cast<int>(g.bonds().size()));
                if (periodic && lx > 2 && ly > 2) {
                    EXPECT_EQ(g.bonds().size(), static_cast<std::size_t>(2 * n));
                }
                if (periodic && ly == 1 && lx > 2) {
                    EXPECT_EQ(g.bonds().size(), static_cast<std::size_t>(lx));
                }
            }
        }
    }
}

TEST(Lattice, BondSetInvariantUnderTranslations) {
    for (auto [lx, ly] : {std::pair{3, 3}, std::pair{4, 2}, std::pair{4, 1}, std::pair{2, 2}}) {
        const auto g = build_rect(lx, ly, true);
        std::set<std::pair<int, int>> original;
        for (const auto& b : g.bonds()) original.insert({b.i, b.j});
        for (int dx = 0; dx < lx; ++dx) {
            for (int dy = 0; dy < ly; ++dy) {
                std::set<std::pair<int, int>> moved;
                for (const auto& b : g.bonds()) {
                    const int a = g.translate(b.i, dx, dy);
                    const int c = g.translate(b.j, dx, dy);
                    moved.insert({std::min(a, c), std::max(a, c)});
                }
                EXPECT_EQ(moved, original) << lx << "x" << ly << " shift " << dx << "," << dy;
            }
        }
    }
}

}  // namespace
}  // namespace xyzlind
