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

#ifndef GLOBALCHAIN_PULSE_H
#define GLOBALCHAIN_PULSE_H

#include <string>
#include <variant>
#include <vector>

#include "globalchain/layout.h"
#include "json.hpp"

namespace globalchain {

enum class Gate : uint8_t { H, X, Z };

// Unordered adjacent species pair.
enum class Pair : uint8_t { AB, AC, BC, AA, BB };

std::string pair_name(Pair p);
Pair pair_from_name(const std::string &s);
Pair pair_of(Species a, Species b);
bool pair_contains(Pair p, Species s);

struct SpeciesUnitary {
    Species species;
    Gate gate;
    double theta = 0;  // only for Gate::Z; applies exp(i theta Z)
    bool operator==(const SpeciesUnitary &) const = default;
};

// exp(i angle Z(x)Z) on every adjacent pair whose species pair is active.
struct CouplingWindow {
    std::vector<Pair> pairs;  // kept sorted and unique
    double angle = 0;
    bool operator==(const CouplingWindow &) const = default;
};

struct ResetC {
    bool operator==(const ResetC &) const = default;
};

// Not a legal pulse. Exists so validation can be exercised against site addressing.
struct SiteAddressed {
    size_t site = 0;
    std::string what;
    bool operator==(const SiteAddressed &) const = default;
};

using Pulse = std::variant<SpeciesUnitary, CouplingWindow, ResetC, SiteAddressed>;

Pulse species_h(Species s);
Pulse species_x(Species s);
Pulse species_z(Species s, double theta);
Pulse window(std::vector<Pair> pairs, double angle);
Pulse reset_c();

struct ScheduleMeta {
    std::string gadget;
    int level = 0;
    nlohmann::json params = nlohmann::json::object();
    bool operator==(const ScheduleMeta &) const = default;
};

struct PulseSchedule {
    std::vector<Pulse> pulses;
    ScheduleMeta meta;

    void append(const PulseSchedule &other);
    void push(Pulse p) { pulses.push_back(std::move(p)); }
    size_t size() const { return pulses.size(); }
    bool operator==(const PulseSchedule &) const = default;
};

// Time-reversed schedule with negated angles. Throws on ResetC.
PulseSchedule inverse(const PulseSchedule &s);

struct Violation {
    size_t index;
    std::string reason;
};

struct ValidationReport {
    bool legal = true;
    std::vector<Violation> violations;
    std::vector<Violation> warnings;
};

ValidationReport validate_schedule(const PulseSchedule &schedule);

// True when the pulse changes the state of cell q (trivial angles and gates excluded).
bool pulse_touches(const Pulse &p, const ChainLayout &layout, size_t q);
std::vector<size_t> touched_cells(const Pulse &p, const ChainLayout &layout);

struct CostRecord {
    size_t pulses = 0;
    std::vector<size_t> per_qubit;
    size_t max_per_qubit = 0;
    size_t qubits_touched = 0;  // cells touched by at least one pulse
};

CostRecord schedule_cost(const PulseSchedule &schedule, const ChainLayout &layout);

nlohmann::json schedule_to_json(const PulseSchedule &s);
PulseSchedule schedule_from_json(const nlohmann::json &j);
std::string serialize(const PulseSchedule &s);
PulseSchedule parse(const std::string &text);

std::string describe(const Pulse &p);

}  // namespace globalchain

#endif
