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

#include <cmath>

#include "globalchain/compiler.h"
#include "globalchain/threshold.h"

using namespace globalchain;

TEST(threshold, wilson) {
    double z = 1.959963984540054;
    auto w = wilson_interval(0, 10);
    EXPECT_NEAR(w.lo, 0, 1e-15);
    EXPECT_NEAR(w.hi, z * z / (10 + z * z), 1e-12);
    // 30 of 100, closed form
    double n = 100, p = 0.3, d = 1 + z * z / n;
    double c = (p + z * z / (2 * n)) / d, h = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / d;
    auto v = wilson_interval(30, 100);
    EXPECT_NEAR(v.lo, c - h, 1e-12);
    EXPECT_NEAR(v.hi, c + h, 1e-12);
    EXPECT_THROW(wilson_interval(3, 0), std::invalid_argument);
}

TEST(threshold, zero_noise_zero_rate) {
    RatePoint r = estimate_logical_rate(0.0, 2000, builtin_code("steane"), 1, 1, 5);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.p_logical, 0.0);
}

TEST(threshold, bare_single_pulse_closed_form) {
    // One pulse acting as Z on both memory qubits of a bare block: each flips w.p. 2 eps / 3.
    ChainLayout l = build_layout({2, 0, 1, "bare"});
    PulseSchedule s;
    s.push(species_z(Species::A, M_PI / 2));
    double eps = 0.3, q = 2 * eps / 3;
    RatePoint r = estimate_logical_rate(eps, 100000, {s}, l, builtin_code("bare"), 1, 17);
    EXPECT_NEAR(r.p_logical, 1 - (1 - q) * (1 - q), 0.01);
    EXPECT_LE(r.ci_low, r.p_logical);
    EXPECT_GE(r.ci_high, r.p_logical);
}

TEST(threshold, per_round_transform) {
    ChainLayout l = build_layout({2, 0, 1, "bare"});
    PulseSchedule s;
    s.push(species_z(Species::A, M_PI / 2));
    RatePoint one = estimate_logical_rate(0.1, 60000, {s}, l, builtin_code("bare"), 1, 3);
    RatePoint three = estimate_logical_rate(0.1, 60000, {s}, l, builtin_code("bare"), 3, 3);
    EXPECT_NEAR(one.p_logical, three.p_logical, 0.01);
}

TEST(threshold, fit_exact) {
    std::vector<RatePoint> pts;
    for (double e : {1e-4, 3e-4, 1e-3, 3e-3}) pts.push_back({e, 7 * e * e, 0, 0, 1000, 10});
    KappaFit f = fit_kappa(pts);
    EXPECT_NEAR(f.kappa, 7.0, 1e-9);
    EXPECT_NEAR(f.slope, 2.0, 1e-9);
    for (auto &p : pts) p.p_logical = p.eps;
    EXPECT_NEAR(fit_kappa(pts).slope, 1.0, 1e-9);
    EXPECT_THROW(fit_kappa({pts[0], pts[1]}), std::invalid_argument);
    EXPECT_THROW(fit_kappa({pts[0], pts[0], pts[0]}), std::invalid_argument);
}

TEST(threshold, window) {
    std::vector<RatePoint> pts = {{1e-4, 1e-6, 0, 0, 100000, 1},
                                  {1e-3, 1e-4, 0, 0, 100000, 10},
                                  {3e-3, 9e-4, 0, 0, 100000, 90},
                                  {1e-2, 2e-2, 0, 0, 100000, 2000}};
    auto w = fit_window(pts);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0].eps, 1e-3);
    EXPECT_EQ(w[1].eps, 3e-3);
}

TEST(threshold, count_toy) {
    ChainLayout l = make_chain("A");
    PulseSchedule g, ec;
    for (int i = 0; i < 5; i++) g.push(species_x(Species::A));
    for (int i = 0; i < 3; i++) ec.push(species_h(Species::A));
    PulseSchedule small;
    small.push(species_x(Species::A));
    NCount n = count_N({{"big", g}, {"small", small}}, ec, l);
    EXPECT_EQ(n.N, 8u);
    EXPECT_EQ(n.kappa_bound, 28.0);
    EXPECT_EQ(n.worst_gadget, "big");
    EXPECT_THROW(count_N({}, ec, l), std::invalid_argument);
}

TEST(threshold, count_level_independent) {
    CodeSpec c = builtin_code("steane");
    NCount a = count_N_at_level(1, c), b = count_N_at_level(2, c);
    EXPECT_EQ(a.N, b.N);
    EXPECT_GT(a.N, 0u);
    EXPECT_EQ(a.kappa_bound, a.N * (a.N - 1) / 2.0);
    EXPECT_THROW(count_N_at_level(0, c), std::invalid_argument);
}

TEST(threshold, projection_arithmetic) {
    auto p = recursion_projection(100, 1e-3, 3).p;
    EXPECT_NEAR(p[0], 1e-3, 1e-18);
    EXPECT_NEAR(p[1] / 1e-4, 1, 1e-12);
    EXPECT_NEAR(p[2] / 1e-6, 1, 1e-12);
    for (double kappa : {3.0, 28.0, 100.0, 4371.0}) {
        for (double eps : {1e-5, 0.3 / kappa, 0.9 / kappa}) {
            auto pr = recursion_projection(kappa, eps, 4);
            EXPECT_TRUE(pr.below_threshold);
            for (int l = 0; l <= 4; l++) {
                double direct = std::pow(kappa, std::pow(2.0, l) - 1) * std::pow(eps, std::pow(2.0, l));
                EXPECT_NEAR(pr.p[l] / direct, 1, 1e-12) << kappa << " " << eps << " " << l;
                if (l) EXPECT_NEAR(pr.p[l] / (kappa * pr.p[l - 1] * pr.p[l - 1]), 1, 1e-12);
                if (l) EXPECT_LT(pr.p[l], pr.p[l - 1]);
            }
        }
    }
}

TEST(threshold, projection_fixed_point_and_above) {
    auto flat = recursion_projection(100, 0.01, 5);
    for (double v : flat.p) EXPECT_EQ(v, 0.01);
    EXPECT_FALSE(flat.below_threshold);
    auto up = recursion_projection(100, 0.02, 5);
    EXPECT_FALSE(up.below_threshold);
    for (size_t l = 1; l < up.p.size(); l++) EXPECT_GT(up.p[l], up.p[l - 1]);
}

TEST(threshold, eps_specs) {
    auto v = parse_eps_spec("1e-4:1e-2:10log");
    ASSERT_EQ(v.size(), 10u);
    EXPECT_NEAR(v.front(), 1e-4, 1e-18);
    EXPECT_NEAR(v.back(), 1e-2, 1e-15);
    for (size_t i = 1; i < v.size(); i++) EXPECT_NEAR(v[i] / v[i - 1], std::pow(100.0, 1.0 / 9), 1e-12);
    auto l = parse_eps_spec("0.1:0.3:3lin");
    ASSERT_EQ(l.size(), 3u);
    EXPECT_NEAR(l[1], 0.2, 1e-15);
    EXPECT_EQ(parse_eps_spec("1e-3,2e-3"), (std::vector<double>{1e-3, 2e-3}));
    EXPECT_THROW(parse_eps_spec("1e-3:1e-2:5"), std::invalid_argument);
    EXPECT_THROW(parse_eps_spec("abc"), std::invalid_argument);
    EXPECT_THROW(parse_eps_spec("0:1e-2:5log"), std::invalid_argument);
}

TEST(threshold, csv_format) {
    std::vector<RatePoint> pts = {{0.001, 0.25, 0.125, 0.5, 100, 25}};
    EXPECT_EQ(points_to_csv(pts), "eps,p,ci_low,ci_high,trials\n0.001,0.25,0.125,0.5,100\n");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1e-4), "0.0001");
}

TEST(threshold, sweep_reproducible_and_monotone) {
    ThresholdConfig cfg;
    cfg.eps = {1e-3, 3e-3, 1e-2};
    cfg.trials = 3000;
    cfg.seed = 99;
    cfg.jobs = 2;
    ThresholdReport a = run_threshold(cfg);
    cfg.jobs = 1;
    ThresholdReport b = run_threshold(cfg);
    EXPECT_EQ(points_to_csv(a.points), points_to_csv(b.points));
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    for (size_t i = 1; i < a.points.size(); i++) EXPECT_GE(a.points[i].ci_high, a.points[i - 1].ci_low);
    EXPECT_TRUE(a.n_level_independent);
    EXPECT_GT(a.N, 0u);
}
