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
#include "globalchain/pulse.h"

using namespace globalchain;

static constexpr double kQ = 0.7853981633974483;

TEST(pulse, legal_schedule) {
    PulseSchedule s;
    s.push(species_h(Species::A));
    s.push(window({Pair::AC}, kQ));
    s.push(reset_c());
    EXPECT_TRUE(validate_schedule(s).legal);
}

TEST(pulse, empty_schedule_legal) { EXPECT_TRUE(validate_schedule(PulseSchedule{}).legal); }

TEST(pulse, site_addressing_caught) {
    PulseSchedule s;
    s.push(species_h(Species::A));
    s.push(SiteAddressed{3, "X on cell 3"});
    auto rep = validate_schedule(s);
    EXPECT_FALSE(rep.legal);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].index, 1u);
    EXPECT_NE(rep.violations[0].reason.find("site addressing"), std::string::npos);
}

TEST(pulse, non_finite_and_empty_window) {
    PulseSchedule s;
    s.push(species_z(Species::B, NAN));
    s.push(CouplingWindow{{}, 0.1});
    EXPECT_EQ(validate_schedule(s).violations.size(), 2u);
}

TEST(pulse, cost_empty) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    CostRecord c = schedule_cost(PulseSchedule{}, l);
    EXPECT_EQ(c.pulses, 0u);
    EXPECT_EQ(c.max_per_qubit, 0u);
    EXPECT_EQ(c.qubits_touched, 0u);
    for (size_t v : c.per_qubit) EXPECT_EQ(v, 0u);
}

TEST(pulse, cost_single_hadamard) {
    ChainLayout l = build_layout({4, 0, 2, "bare"});
    PulseSchedule s;
    s.push(species_h(Species::A));
    CostRecord c = schedule_cost(s, l);
    EXPECT_EQ(c.pulses, 1u);
    EXPECT_EQ(c.qubits_touched, 8u);
    EXPECT_EQ(c.max_per_qubit, 1u);
}

TEST(pulse, trivial_angles_do_not_touch) {
    ChainLayout l = make_chain("ACB");
    EXPECT_FALSE(pulse_touches(species_z(Species::A, 0), l, 0));
    EXPECT_FALSE(pulse_touches(species_z(Species::A, M_PI), l, 0));
    EXPECT_TRUE(pulse_touches(species_z(Species::A, 0.1), l, 0));
    EXPECT_FALSE(pulse_touches(species_z(Species::A, 0.1), l, 1));
    EXPECT_EQ(touched_cells(window({Pair::AC}, 0.3), l), (std::vector<size_t>{0, 1}));
    EXPECT_TRUE(touched_cells(window({Pair::AB}, 0.3), l).empty());  // no A-B bond on this chain
}

TEST(pulse, swap_round_trip_within_budget) {
    // onto the C spin and back off: the transported A qubit sees at most 20 operations
    ChainLayout l = make_chain("AACB");
    PulseSchedule trip = compile_swap_interface(Species::A).schedule;
    trip.append(compile_swap_interface(Species::A).schedule);
    CostRecord c = schedule_cost(trip, l);
    EXPECT_LE(c.per_qubit[1], 20u);
    EXPECT_LE(c.per_qubit[2], 20u);
    ChainLayout lb = make_chain("ACBB");
    PulseSchedule tb = compile_swap_interface(Species::B).schedule;
    tb.append(compile_swap_interface(Species::B).schedule);
    EXPECT_LE(schedule_cost(tb, lb).per_qubit[2], 20u);
}

TEST(pulse, serialize_round_trip) {
    PulseSchedule s = compile_cz_ab(0).schedule;
    PulseSchedule r = parse(serialize(s));
    EXPECT_EQ(r, s);
    EXPECT_EQ(serialize(r), serialize(s));
    PulseSchedule ec = compile_ec_round(builtin_code("steane"), 1, build_layout({26, 0, 2, "steane"})).schedule;
    EXPECT_EQ(parse(serialize(ec)), ec);
}

TEST(pulse, parse_reset_only) {
    PulseSchedule s = parse(R"({"pulses":[{"op":"reset_c"}],"meta":{"gadget":"x","level":0}})");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<ResetC>(s.pulses[0]));
}

TEST(pulse, parse_errors) {
    try {
        parse(R"({"pulses":[{"op":"measure_site_3"}]})");
        FAIL() << "accepted a site measurement";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("unknown pulse kind"), std::string::npos);
    }
    EXPECT_THROW(parse(R"({"meta":{}})"), std::invalid_argument);
    EXPECT_THROW(parse("not json"), std::invalid_argument);
    EXPECT_THROW(parse(R"({"pulses":[{"op":"coupling","pairs":[],"angle":1}]})"), std::invalid_argument);
}

TEST(pulse, site_addressed_not_serializable) {
    PulseSchedule s;
    s.push(SiteAddressed{0, "x"});
    EXPECT_THROW(serialize(s), std::invalid_argument);
}

TEST(pulse, inverse) {
    PulseSchedule s;
    s.push(species_h(Species::A));
    s.push(species_z(Species::B, 0.3));
    s.push(window({Pair::AB}, 0.2));
    PulseSchedule v = inverse(s);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v.pulses[0], window({Pair::AB}, -0.2));
    EXPECT_EQ(v.pulses[1], species_z(Species::B, -0.3));
    EXPECT_EQ(v.pulses[2], species_h(Species::A));
    PulseSchedule r;
    r.push(reset_c());
    EXPECT_THROW(inverse(r), std::invalid_argument);
}

TEST(pulse, window_pairs_sorted_unique) {
    auto w = std::get<CouplingWindow>(window({Pair::BC, Pair::AB, Pair::BC}, 0.1));
    EXPECT_EQ(w.pairs, (std::vector<Pair>{Pair::AB, Pair::BC}));
    for (Pair p : {Pair::AB, Pair::AC, Pair::BC, Pair::AA, Pair::BB}) EXPECT_EQ(pair_from_name(pair_name(p)), p);
    EXPECT_EQ(pair_of(Species::C, Species::A), Pair::AC);
}

TEST(pulse, every_compiled_gadget_legal) {
    for (const auto &g : gadget_names()) {
        for (int level : {0, 1}) {
            auto r = compile_gadget({g, level, {}}, demo_layout(g, level));
            EXPECT_TRUE(validate_schedule(r.schedule).legal) << g;
            EXPECT_GT(r.schedule.size(), 0u) << g;
        }
    }
}
