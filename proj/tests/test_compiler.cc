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

#include <random>

#include "globalchain/compiler.h"
#include "globalchain/densesim.h"
#include "globalchain/stabsim.h"
#include "oracle.h"

using namespace globalchain;
using oracle::cd;
using oracle::Mat;

static constexpr double kQ = M_PI / 4;

namespace {

size_t index_of(size_t a, const std::vector<size_t> &cells, size_t n) {
    size_t idx = 0;
    for (size_t j = 0; j < cells.size(); j++) {
        if (a >> (cells.size() - 1 - j) & 1) idx |= size_t{1} << (n - 1 - cells[j]);
    }
    return idx;
}

// Block of u with every cell outside `cells` held at |0> on both sides; also returns the leaked weight.
Mat restrict_to(const Mat &u, size_t n, const std::vector<size_t> &cells, double *leak) {
    size_t dim = size_t{1} << cells.size();
    Mat r(dim, dim);
    *leak = 0;
    for (size_t a = 0; a < dim; a++) {
        double kept = 0;
        for (size_t b = 0; b < dim; b++) {
            r(b, a) = u(index_of(b, cells, n), index_of(a, cells, n));
            kept += std::norm(r(b, a));
        }
        *leak = std::max(*leak, 1 - kept);
    }
    return r;
}

StateVector product_state(const std::vector<Eigen::Vector2cd> &q) { return StateVector::product(q); }

std::vector<Eigen::Vector2cd> random_qubits(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Eigen::Vector2cd> out;
    for (size_t i = 0; i < n; i++) {
        Eigen::Vector2cd v(cd(g(rng), g(rng)), cd(g(rng), g(rng)));
        out.push_back(v.normalized());
    }
    return out;
}

double overlap(const StateVector &a, const StateVector &b) { return std::norm(a.amp.dot(b.amp)); }

// Run S steps on C psi_1..psi_n C until the state reads psi_n..psi_1; brute force, no table.
int brute_mirror_steps(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    ChainLayout l = make_chain("C" + std::string(n, 'B') + "C");
    PulseSchedule step = compile_global_S({Species::B}, l).schedule;
    auto q = random_qubits(n, rng);
    std::vector<Eigen::Vector2cd> in = {Eigen::Vector2cd(1, 0)}, want = in;
    for (size_t i = 0; i < n; i++) in.push_back(q[i]);
    for (size_t i = 0; i < n; i++) want.push_back(q[n - 1 - i]);
    in.push_back(Eigen::Vector2cd(1, 0));
    want.push_back(Eigen::Vector2cd(1, 0));
    StateVector s = product_state(in), target = product_state(want);
    for (int k = 1; k <= 4 * (int)n + 8; k++) {
        s = apply_schedule(s, step, l);
        if (overlap(s, target) > 1 - 1e-10) return k;
    }
    return -1;
}

}  // namespace

TEST(compiler, global_S_single_cell_is_hadamard) {
    ChainLayout l = make_chain("CBC");
    Mat u = oracle::schedule_matrix(compile_global_S({Species::B}, l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 3, {1}, &leak);
    EXPECT_LT(leak, 1e-12);
    EXPECT_LT(oracle::phase_distance(r, oracle::H()), 1e-10);
}

TEST(compiler, global_S_is_h_after_cz_chain) {
    ChainLayout l = make_chain("CAAAAC");
    Mat u = oracle::schedule_matrix(compile_global_S({Species::A}, l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 6, {1, 2, 3, 4}, &leak);
    Mat want = oracle::on(4, 0, oracle::H()) * oracle::on(4, 1, oracle::H()) * oracle::on(4, 2, oracle::H()) *
               oracle::on(4, 3, oracle::H()) * oracle::CZ(4, 0, 1) * oracle::CZ(4, 1, 2) * oracle::CZ(4, 2, 3);
    EXPECT_LT(leak, 1e-12);
    EXPECT_LT(oracle::phase_distance(r, want), 1e-10);
}

TEST(compiler, mirror_table_matches_brute_force) {
    for (size_t n = 1; n <= 6; n++) {
        int k = brute_mirror_steps(n, 100 + n);
        EXPECT_EQ(k, k_mirror(n)) << "n=" << n;
        // a second random input gives the same period
        EXPECT_EQ(brute_mirror_steps(n, 200 + n), k) << "n=" << n;
    }
    EXPECT_THROW(k_mirror(0), std::invalid_argument);
    EXPECT_THROW(k_mirror(kMirrorTableMax + 1), std::invalid_argument);
}

TEST(compiler, mirror_cycle_swaps_wire) {
    ChainLayout l = make_chain("CBBC");
    Mat u = oracle::schedule_matrix(compile_mirror_cycle(Species::B, 0, l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 4, {1, 2}, &leak);
    EXPECT_LT(leak, 1e-12);
    EXPECT_LT(oracle::phase_distance(r, oracle::SWAP(2, 0, 1)), 1e-10);
}

TEST(compiler, mirror_cycle_level1_reverses) {
    ChainLayout l = make_chain("CBBBBC");
    Mat u = oracle::schedule_matrix(compile_mirror_cycle(Species::B, 1, l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 6, {1, 2, 3, 4}, &leak);
    EXPECT_LT(leak, 1e-12);
    EXPECT_LT(oracle::phase_distance(r, oracle::SWAP(4, 0, 3) * oracle::SWAP(4, 1, 2)), 1e-10);
}

TEST(compiler, mirror_cycle_single_cells) {
    ChainLayout l = make_chain("CBCBC");
    Mat u = oracle::schedule_matrix(compile_mirror_cycle(Species::B, 0, l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 5, {1, 3}, &leak);
    EXPECT_LT(oracle::phase_distance(r, Mat::Identity(4, 4)), 1e-10);
}

TEST(compiler, decouple_everything) {
    ChainLayout l = make_chain("ACB");
    for (double a : {0.3, kQ, -1.1}) {
        Mat u = oracle::schedule_matrix(compile_decoupling({}, a).schedule, l);
        EXPECT_LT(oracle::phase_distance(u, Mat::Identity(8, 8)), 1e-10);
    }
}

TEST(compiler, decouple_keep_one_pair) {
    ChainLayout l = make_chain("ACB");
    Mat u = oracle::schedule_matrix(compile_decoupling({Pair::AC}, kQ).schedule, l);
    EXPECT_LT(oracle::phase_distance(u, oracle::ZZ(3, 0, 1, kQ)), 1e-10);
    Mat v = oracle::schedule_matrix(compile_decoupling({Pair::BC}, 0.4).schedule, l);
    EXPECT_LT(oracle::phase_distance(v, oracle::ZZ(3, 1, 2, 0.4)), 1e-10);
    // the always-on A-B coupling is refocused too
    ChainLayout ab = make_chain("AB");
    Mat w = oracle::schedule_matrix(compile_decoupling({Pair::AC}, 0.7).schedule, ab);
    EXPECT_LT(oracle::phase_distance(w, Mat::Identity(4, 4)), 1e-10);
}

TEST(compiler, decouple_edge_cases) {
    EXPECT_EQ(compile_decoupling({Pair::AC}, 0).schedule.size(), 0u);
    try {
        compile_decoupling({Pair::AB, Pair::AC}, 0.2);  // forces B and C together but wants B-C off
        FAIL() << "conflict not reported";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("conflict"), std::string::npos) << e.what();
    }
}

// C starts in |0>, so the leading reset is a no-op on the restricted block.
static PulseSchedule drop_resets(PulseSchedule s) {
    std::erase_if(s.pulses, [](const Pulse &p) { return std::holds_alternative<ResetC>(p); });
    return s;
}

TEST(compiler, edge_phase_random_angles) {
    ChainLayout l = make_chain("AAC");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int i = 0; i < 10; i++) {
        double th = ang(rng);
        Mat u = oracle::schedule_matrix(drop_resets(compile_edge_phase(Species::A, th).schedule), l);
        double leak = 0;
        Mat r = restrict_to(u, 3, {0, 1}, &leak);
        EXPECT_LT(leak, 1e-12);
        EXPECT_LT(oracle::phase_distance(r, oracle::on(2, 1, oracle::Rz(th))), 1e-10) << th;
    }
    Mat z = oracle::schedule_matrix(drop_resets(compile_edge_phase(Species::A, 0).schedule), l);
    EXPECT_LT(oracle::phase_distance(z, Mat::Identity(8, 8)), 1e-12);
}

TEST(compiler, cz_ab_examples) {
    ChainLayout l = make_chain("ACB");
    Mat u = oracle::schedule_matrix(compile_cz_ab(0).schedule, l);
    EXPECT_LT(oracle::phase_distance(u, oracle::CZ(3, 0, 2)), 1e-10);
    cd ref = u(0, 0);
    for (size_t c : {0, 1}) {
        size_t i = c << 1;  // |0 c 0>
        EXPECT_LT(std::abs(u(i, i) - ref), 1e-10);
    }
    EXPECT_LT(std::abs(u(5, 5) + ref), 1e-10);  // |1 0 1>
}

TEST(compiler, swap_interface_moves_states) {
    ChainLayout l = make_chain("AACB");
    PulseSchedule s = compile_swap_interface(Species::A).schedule;
    Eigen::Vector2cd zero(1, 0), one(0, 1), plus(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
    for (const auto &psi : {zero, one, plus}) {
        StateVector in = product_state({zero, psi, zero, zero});
        StateVector want = product_state({zero, zero, psi, zero});
        EXPECT_GT(overlap(apply_schedule(in, s, l), want), 1 - 1e-10);
    }
    PulseSchedule twice = s;
    twice.append(s);
    EXPECT_LT(oracle::phase_distance(oracle::schedule_matrix(twice, l), Mat::Identity(16, 16)), 1e-10);
    ChainLayout b = make_chain("ACBB");
    Mat ub = oracle::schedule_matrix(compile_swap_interface(Species::B).schedule, b);
    EXPECT_LT(oracle::phase_distance(ub, oracle::SWAP(4, 1, 2)), 1e-10);
}

TEST(compiler, syndrome_reset_clean_input_untouched) {
    ChainLayout l = demo_layout("syndrome_reset");
    PulseSchedule s = compile_syndrome_reset(0, l).schedule;
    std::mt19937_64 rng(8);
    auto q = random_qubits(12, rng);
    for (size_t i = 0; i < 12; i++) {
        if (l.cells[i].species != Species::A || i == 3 || i == 8) q[i] = Eigen::Vector2cd(1, 0);
    }
    StateVector in = product_state(q);
    EXPECT_GT(overlap(apply_schedule(in, s, l), in), 1 - 1e-10);
}

TEST(compiler, syndrome_reset_clears_adjacent_syndromes) {
    ChainLayout l = demo_layout("syndrome_reset");
    for (int level : {0, 1}) {
        auto res = compile_syndrome_reset(level, l);
        EXPECT_EQ(res.claimed_action.roles.at("syndrome_cells"), nlohmann::json({3, 8}));
        std::mt19937_64 rng(9 + level);
        auto q = random_qubits(12, rng);
        auto want = q;
        for (size_t i = 4; i < 8; i++) q[i] = want[i] = Eigen::Vector2cd(1, 0);
        q[3] = q[8] = Eigen::Vector2cd(0, 1);
        want[3] = want[8] = Eigen::Vector2cd(1, 0);
        EXPECT_GT(overlap(apply_schedule(product_state(q), res.schedule, l), product_state(want)), 1 - 1e-10);
    }
}

TEST(compiler, edge_rotation_identities) {
    ChainLayout l = make_chain("BCAA");
    Mat zero = oracle::schedule_matrix(compile_edge_rotation(0, 0).schedule, l);
    EXPECT_LT(oracle::phase_distance(zero, Mat::Identity(16, 16)), 1e-10);
    PulseSchedule s = compile_edge_rotation(0.9, 0).schedule;
    s.append(compile_edge_rotation(-0.9, 0).schedule);
    EXPECT_LT(oracle::phase_distance(oracle::schedule_matrix(s, l), Mat::Identity(16, 16)), 1e-10);
    Mat u = oracle::schedule_matrix(compile_edge_rotation(0.9, 0).schedule, l);
    EXPECT_LT(oracle::phase_distance(u, oracle::on(4, 2, oracle::Rz(0.9))), 1e-10);
    // both ends of an A run that sits between two B-facing C cells
    ChainLayout two = make_chain("BCAACB");
    Mat v = oracle::schedule_matrix(compile_edge_rotation(0.4, 0).schedule, two);
    EXPECT_LT(oracle::phase_distance(v, oracle::on(6, 2, oracle::Rz(0.4)) * oracle::on(6, 3, oracle::Rz(0.4))), 1e-10);
}

TEST(compiler, interblock_angle_from_oracle) {
    EXPECT_NEAR(interblock_window_angle(), -kQ, 1e-15);
}

TEST(compiler, interblock_cz) {
    ChainLayout l = demo_layout("interblock_cz");
    for (int level : {0, 1}) {
        PulseSchedule s = compile_interblock_cz(level, l).schedule;
        std::mt19937_64 rng(12);
        // both edge qubits |0>: bulk A qubits pick up nothing
        auto q = random_qubits(8, rng);
        for (size_t i = 1; i < 7; i++) q[i] = Eigen::Vector2cd(1, 0);
        StateVector in = product_state(q);
        EXPECT_GT(overlap(apply_schedule(in, s, l), in), 1 - 1e-10);
        // twice is the identity on the edge pair
        PulseSchedule twice = s;
        twice.append(s);
        auto q2 = random_qubits(8, rng);
        for (size_t i = 2; i < 6; i++) q2[i] = Eigen::Vector2cd(1, 0);
        StateVector in2 = product_state(q2);
        EXPECT_GT(overlap(apply_schedule(in2, twice, l), in2), 1 - 1e-10);
        // |1>|1> on the facing cells flips the sign relative to |1>|0>
        auto basis = [&](size_t a, size_t b) {
            std::vector<Eigen::Vector2cd> v(8, Eigen::Vector2cd(1, 0));
            if (a) v[1] = Eigen::Vector2cd(0, 1);
            if (b) v[6] = Eigen::Vector2cd(0, 1);
            return product_state(v);
        };
        cd p10 = basis(1, 0).amp.dot(apply_schedule(basis(1, 0), s, l).amp);
        cd p11 = basis(1, 1).amp.dot(apply_schedule(basis(1, 1), s, l).amp);
        cd p00 = basis(0, 0).amp.dot(apply_schedule(basis(0, 0), s, l).amp);
        EXPECT_LT(std::abs(p10 - p00), 1e-10);
        EXPECT_LT(std::abs(p11 + p00), 1e-10);
    }
}

TEST(compiler, transversal_cz_bare_is_plain_cz) {
    ChainLayout l = demo_layout("intrablock_transversal_cz");
    Mat u = oracle::schedule_matrix(compile_intrablock_transversal_cz(builtin_code("bare"), l).schedule, l);
    double leak = 0;
    Mat r = restrict_to(u, 8, {0, 1, 6, 7}, &leak);
    EXPECT_LT(leak, 1e-12);
    EXPECT_LT(oracle::phase_distance(r, oracle::CZ(4, 0, 1) * oracle::CZ(4, 2, 3)), 1e-10);
}

TEST(compiler, transversal_cz_steane_logical_action) {
    ChainLayout l = build_layout({26, 0, 2, "steane"});
    CodeSpec code = builtin_code("steane");
    PulseSchedule s = compile_intrablock_transversal_cz(code, l).schedule;
    // |0 0> stays put
    Tableau z = prepare_code_state(l, code, 'Z');
    Tableau z0 = z;
    for (const auto &p : s.pulses) z.apply_pulse(p, l);
    EXPECT_TRUE(z.same_state(z0));
    // |+ +> -> X0 Z1 and Z0 X1 stabilize
    Tableau x = prepare_code_state(l, code, 'X');
    for (const auto &p : s.pulses) x.apply_pulse(p, l);
    for (size_t b = 0; b < 2; b++) {
        PauliString xz = place_on_slot(code.logical_x[0], l, code, b, 0) * place_on_slot(code.logical_z[0], l, code, b, 1);
        PauliString zx = place_on_slot(code.logical_z[0], l, code, b, 0) * place_on_slot(code.logical_x[0], l, code, b, 1);
        EXPECT_EQ(x.expectation(xz), 1) << b;
        EXPECT_EQ(x.expectation(zx), 1) << b;
        for (size_t k = 0; k < 2; k++) {
            for (const auto &g : code.generators) EXPECT_EQ(x.expectation(place_on_slot(g, l, code, b, k)), 1);
        }
    }
    // |+ -> : X0 Z1 keeps its sign, Z0 X1 picks up the minus
    Tableau pm = prepare_code_state(l, code, 'X');
    pm.apply_pauli(place_on_slot(code.logical_z[0], l, code, 0, 1));
    for (const auto &p : s.pulses) pm.apply_pulse(p, l);
    PauliString xz = place_on_slot(code.logical_x[0], l, code, 0, 0) * place_on_slot(code.logical_z[0], l, code, 0, 1);
    PauliString zx = place_on_slot(code.logical_z[0], l, code, 0, 0) * place_on_slot(code.logical_x[0], l, code, 0, 1);
    EXPECT_EQ(pm.expectation(xz), 1);
    EXPECT_EQ(pm.expectation(zx), -1);
}

TEST(compiler, ancilla_reset) {
    ChainLayout l = make_chain("ACBBCA");
    PulseSchedule s = compile_ancilla_reset(0).schedule;
    std::mt19937_64 rng(21);
    auto q = random_qubits(6, rng);
    auto want = q;
    for (size_t i = 1; i < 5; i++) want[i] = Eigen::Vector2cd(1, 0);
    EXPECT_GT(overlap(apply_schedule(product_state(q), s, l), product_state(want)), 1 - 1e-10);
}

TEST(compiler, budgets_match_cost) {
    for (const auto &g : gadget_names()) {
        ChainLayout l = demo_layout(g, 0);
        auto r = compile_gadget({g, 0, {}}, l);
        CostRecord c = schedule_cost(r.schedule, l);
        EXPECT_EQ(r.budget.pulses, c.pulses) << g;
        EXPECT_EQ(r.budget.max_per_qubit, c.max_per_qubit) << g;
        EXPECT_FALSE(r.claimed_action.family.empty()) << g;
        EXPECT_EQ(r.schedule.meta.gadget, g);
    }
}

TEST(compiler, deterministic) {
    for (const auto &g : gadget_names()) {
        ChainLayout l = demo_layout(g, 1);
        EXPECT_EQ(serialize(compile_gadget({g, 1, {}}, l).schedule), serialize(compile_gadget({g, 1, {}}, l).schedule));
    }
}

TEST(compiler, bad_requests) {
    EXPECT_THROW(compile_gadget({"teleport", 0, {}}, make_chain("ACB")), std::invalid_argument);
    EXPECT_THROW(compile_global_S({}, make_chain("CAC")), std::invalid_argument);
    EXPECT_THROW(compile_global_S({Species::C}, make_chain("CAC")), std::invalid_argument);
    EXPECT_THROW(compile_interblock_cz(0, make_chain("AACAA")), std::invalid_argument);
    CodeSpec noncz = code_from_json({{"name", "xx"},
                                     {"generators", {"XX"}},
                                     {"logical_x", {"XI"}},
                                     {"logical_z", {"ZZ"}},
                                     {"distance", 1}});
    EXPECT_THROW(compile_intrablock_transversal_cz(noncz, build_layout({2, 0, 2, "bare"})), std::invalid_argument);
}
