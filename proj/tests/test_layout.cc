// Copyright 2026 The globalchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "globalchain/layout.h"

using namespace globalchain;

namespace {

// Hand-unrolled recursion: A_k = (A_{k-1} D_{k-1})^{n-1} A_{k-1}, D_k = C B_{k-1} C, where B_k is
// A_k with A and B exchanged. D_0 = C B B C.
std::string species_oracle(size_t n, int level, size_t blocks) {
    std::vector<std::string> a = {std::string(n, 'A')};
    std::vector<std::string> d = {"CBBC"};
    for (int k = 1; k <= level; k++) {
        std::string ak;
        for (size_t i = 0; i + 1 < n; i++) ak += a[k - 1] + d[k - 1];
        ak += a[k - 1];
        a.push_back(ak);
        std::string b = a[k - 1];
        for (char &ch : b) ch = ch == 'A' ? 'B' : ch == 'B' ? 'A' : ch;
        d.push_back("C" + b + "C");
    }
    std::string out;
    for (size_t b = 0; b < blocks; b++) {
        if (b) out += d[level];
        out += a[level];
    }
    return out;
}

}  // namespace

TEST(layout, base_two_blocks) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    EXPECT_EQ(l.size(), 12u);
    EXPECT_EQ(l.species_string(), "AAAACBBCAAAA");
}

TEST(layout, single_block) {
    ChainLayout l = build_layout({4, 0, 1, "bare"});
    EXPECT_EQ(l.species_string(), "AAAA");
}

TEST(layout, level1_length) {
    ChainLayout l = build_layout({4, 1, 1, "bare"});
    EXPECT_EQ(l.size(), 28u);
    EXPECT_EQ(block_length(4, 1), 28u);
}

TEST(layout, matches_unrolled_recursion) {
    for (size_t n : {2, 3, 4, 5}) {
        for (int level : {0, 1, 2}) {
            for (size_t blocks : {1, 2, 3}) {
                ChainLayout l = build_layout({n, level, blocks, "bare"});
                EXPECT_EQ(l.species_string(), species_oracle(n, level, blocks)) << n << " " << level << " " << blocks;
                EXPECT_TRUE(verify_layout_invariants(l).pass) << verify_layout_invariants(l).violation;
            }
        }
    }
}

TEST(layout, cell_at_roles) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    auto [s0, r0] = cell_at(l, 0);
    EXPECT_EQ(s0, Species::A);
    EXPECT_TRUE(r0 == CellRole::Data || r0 == CellRole::Syndrome);
    EXPECT_EQ(cell_at(l, 4), std::make_pair(Species::C, CellRole::Reset));
    EXPECT_EQ(cell_at(l, 5), std::make_pair(Species::B, CellRole::Wire));
    EXPECT_THROW(cell_at(l, 12), std::out_of_range);
}

TEST(layout, spans) {
    ChainLayout l0 = build_layout({4, 0, 2, "bare"});
    auto a = spans_of(l0, NodeKind::ABlock, 0);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0], (Interval{0, 4}));
    EXPECT_EQ(a[1], (Interval{8, 12}));

    ChainLayout l1 = build_layout({4, 1, 1, "bare"});
    auto d = spans_of(l1, NodeKind::Interconnect, 0);
    ASSERT_EQ(d.size(), 3u);
    for (const auto &iv : d) EXPECT_EQ(iv.size(), 4u);

    auto c = spans_of(l1, NodeKind::CCell, 0);
    std::vector<Interval> want;
    for (size_t q = 0; q < l1.size(); q++) {
        if (l1.cells[q].species == Species::C) want.push_back({q, q + 1});
    }
    EXPECT_EQ(c, want);
}

TEST(layout, bad_interconnect_rejected) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    l.cells[6].species = Species::C;  // C B C C
    l.root.children[1].children.clear();
    auto rep = verify_layout_invariants(l);
    EXPECT_FALSE(rep.pass);
    ChainLayout m = make_chain("AAAACBCAAAA");
    auto rep2 = verify_layout_invariants(m);
    EXPECT_FALSE(rep2.pass);
    EXPECT_NE(rep2.violation.find("interconnect pattern"), std::string::npos) << rep2.violation;
}

TEST(layout, permuted_cells_rejected) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    std::swap(l.cells[3], l.cells[4]);
    auto rep = verify_layout_invariants(l);
    EXPECT_FALSE(rep.pass);
    EXPECT_NE(rep.violation.find("flattening mismatch"), std::string::npos) << rep.violation;
}

TEST(layout, mirror_symmetric_roles) {
    ChainLayout l = build_layout({26, 0, 2, "steane"});
    for (const auto &iv : spans_of(l, NodeKind::ABlock, 0)) {
        for (size_t k = 0; k < iv.size(); k++) {
            EXPECT_EQ(l.cells[iv.lo + k].role, l.cells[iv.hi - 1 - k].role);
        }
    }
}

TEST(layout, json_round_trip) {
    for (int level : {0, 1}) {
        ChainLayout l = build_layout({4, level, 2, "bare"});
        ChainLayout r = layout_from_json(layout_to_json(l));
        EXPECT_EQ(r.cells, l.cells);
        EXPECT_EQ(layout_to_json(r), layout_to_json(l));
    }
}

TEST(layout, species_runs) {
    ChainLayout l = make_chain("AACBBCAA");
    auto runs = species_runs(l, Species::B);
    ASSERT_EQ(runs.size(), 1u);
    EXPECT_EQ(runs[0], (Interval{3, 5}));
    EXPECT_EQ(species_runs(l, Species::A).size(), 2u);
}

TEST(layout, bad_config) {
    EXPECT_THROW(build_layout({0, 0, 1, "bare"}), std::invalid_argument);
    EXPECT_THROW(build_layout({4, 0, 0, "bare"}), std::invalid_argument);
    EXPECT_THROW(build_layout({4, 0, 1, "nonsense"}), std::invalid_argument);
    EXPECT_THROW(build_layout({4, 0, 1, "steane"}), std::invalid_argument);  // block too short for the roles
}
