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

#include "globalchain/compiler.h"
#include "globalchain/verify.h"

using namespace globalchain;

TEST(verify, every_gadget_level0) {
    for (const auto &g : selftest_all()) {
        EXPECT_TRUE(g.pass) << g.gadget << ": " << g.report.dump();
        EXPECT_LE(g.max_deviation, 1e-10) << g.gadget;
    }
}

TEST(verify, every_gadget_level1) {
    for (const auto &name : gadget_names()) {
        auto g = verify_gadget(name, 1);
        EXPECT_TRUE(g.pass) << name << ": " << g.report.dump();
    }
}

TEST(verify, other_angles) {
    for (double th : {0.0, 0.3, -1.2}) {
        for (const char *name : {"edge_phase", "edge_rotation", "decouple"}) {
            auto g = verify_gadget(name, 0, th);
            EXPECT_TRUE(g.pass) << name << " " << th;
        }
    }
}

TEST(verify, leakage_detected) {
    // a bare H on C leaves the |0>_C subspace
    ChainLayout l = make_chain("AC");
    PulseSchedule s;
    s.push(species_h(Species::C));
    double leak = 0;
    EXPECT_FALSE(reduced_action(s, l, {0}, 1e-10, &leak).has_value());
    EXPECT_NEAR(leak, 0.5, 1e-12);
    auto ok = reduced_action(PulseSchedule{}, l, {0});
    ASSERT_TRUE(ok.has_value());
    EXPECT_LT((*ok - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(verify, stabilizer_dense_agree_on_gadgets) {
    for (const auto &name : gadget_names()) {
        if (demo_layout(name).size() > 12) continue;
        auto rep = stabilizer_dense_agreement(name, 31, 6);
        EXPECT_TRUE(rep.pass) << name << ": " << rep.detail;
        EXPECT_EQ(rep.cases, 6u) << name;
    }
}

TEST(verify, random_product_states) {
    auto a = random_product(5, 1), b = random_product(5, 1), c = random_product(5, 2);
    ASSERT_EQ(a.size(), 5u);
    for (size_t i = 0; i < 5; i++) {
        EXPECT_NEAR(a[i].norm(), 1, 1e-12);
        EXPECT_EQ(a[i], b[i]);
    }
    EXPECT_NE(a[0], c[0]);
}

TEST(verify, unknown_gadget) { EXPECT_THROW(verify_gadget("nope"), std::invalid_argument); }
