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

#include "globalchain/pulse.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace globalchain {

static const char *const PAIR_NAMES[] = {"A-B", "A-C", "B-C", "A-A", "B-B"};

std::string pair_name(Pair p) {
    return PAIR_NAMES[(int)p];
}

Pair pair_from_name(const std::string &s) {
    if (s.size() == 3 && s[1] == '-') {
        return pair_of(species_from_char(s[0]), species_from_char(s[2]));
    }
    throw std::invalid_argument("unknown species pair '" + s + "'");
}

Pair pair_of(Species a, Species b) {
    if (a > b) {
        std::swap(a, b);
    }
    if (a == Species::A && b == Species::B) return Pair::AB;
    if (a == Species::A && b == Species::C) return Pair::AC;
    if (a == Species::B && b == Species::C) return Pair::BC;
    if (a == Species::A && b == Species::A) return Pair::AA;
    if (a == Species::B && b == Species::B) return Pair::BB;
    throw std::invalid_argument("C-C is not a coupling pair");
}

bool pair_contains(Pair p, Species s) {
    switch (p) {
        case Pair::AB:
            return s != Species::C;
        case Pair::AC:
            return s != Species::B;
        case Pair::BC:
            return s != Species::A;
        case Pair::AA:
            return s == Species::A;
        case Pair::BB:
            return s == Species::B;
    }
    return false;
}

Pulse species_h(Species s) {
    return SpeciesUnitary{s, Gate::H, 0};
}
Pulse species_x(Species s) {
    return SpeciesUnitary{s, Gate::X, 0};
}
Pulse species_z(Species s, double theta) {
    return SpeciesUnitary{s, Gate::Z, theta};
}
Pulse window(std::vector<Pair> pairs, double angle) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return CouplingWindow{std::move(pairs), angle};
}
Pulse reset_c() {
    return ResetC{};
}

void PulseSchedule::append(const PulseSchedule &other) {
    pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
}

PulseSchedule inverse(const PulseSchedule &s) {
    PulseSchedule out;
    out.meta = s.meta;
    out.meta.gadget = s.meta.gadget + "^-1";
    for (auto it = s.pulses.rbegin(); it != s.pulses.rend(); ++it) {
        if (const auto *u = std::get_if<SpeciesUnitary>(&*it)) {
            SpeciesUnitary v = *u;
            v.theta = -v.theta;
            out.push(v);
        } else if (const auto *w = std::get_if<CouplingWindow>(&*it)) {
            CouplingWindow v = *w;
            v.angle = -v.angle;
            out.push(v);
        } else {
            throw std::invalid_argument("schedule with reset or site addressing has no inverse");
        }
    }
    return out;
}

ValidationReport validate_schedule(const PulseSchedule &schedule) {
    ValidationReport rep;
    for (size_t k = 0; k < schedule.pulses.size(); k++) {
        const Pulse &p = schedule.pulses[k];
        if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
            if (!std::isfinite(u->theta)) {
                rep.violations.push_back({k, "non-finite angle"});
            } else if (u->gate == Gate::Z && std::abs(u->theta) > 2 * std::numbers::pi) {
                rep.warnings.push_back({k, "Z angle outside [-2pi, 2pi] (normalization)"});
            }
        } else if (const auto *w = std::get_if<CouplingWindow>(&p)) {
            if (w->pairs.empty()) {
                rep.violations.push_back({k, "coupling window with empty pair set"});
            }
            if (!std::isfinite(w->angle)) {
                rep.violations.push_back({k, "non-finite angle"});
            }
        } else if (const auto *s = std::get_if<SiteAddressed>(&p)) {
            rep.violations.push_back({k, "site addressing (cell " + std::to_string(s->site) + ")"});
        }
    }
    rep.legal = rep.violations.empty();
    return rep;
}

// exp(i theta P) is a global phase when theta is a multiple of pi.
static bool trivial_angle(double theta) {
    double r = std::remainder(theta, std::numbers::pi);
    return std::abs(r) < 1e-12;
}

bool pulse_touches(const Pulse &p, const ChainLayout &layout, size_t q) {
    const auto &cells = layout.cells;
    if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
        if (u->gate == Gate::Z && trivial_angle(u->theta)) {
            return false;
        }
        return cells[q].species == u->species;
    }
    if (const auto *w = std::get_if<CouplingWindow>(&p)) {
        if (trivial_angle(w->angle)) {
            return false;
        }
        for (size_t nb : {q - 1, q + 1}) {
            if (nb >= cells.size()) {  // q - 1 wraps for q == 0
                continue;
            }
            if (cells[q].species == Species::C && cells[nb].species == Species::C) {
                continue;
            }
            Pair pr = pair_of(cells[q].species, cells[nb].species);
            if (std::find(w->pairs.begin(), w->pairs.end(), pr) != w->pairs.end()) {
                return true;
            }
        }
        return false;
    }
    if (std::holds_alternative<ResetC>(p)) {
        return cells[q].species == Species::C;
    }
    return std::get<SiteAddressed>(p).site == q;
}

std::vector<size_t> touched_cells(const Pulse &p, const ChainLayout &layout) {
    std::vector<size_t> out;
    for (size_t q = 0; q < layout.cells.size(); q++) {
        if (pulse_touches(p, layout, q)) {
            out.push_back(q);
        }
    }
    return out;
}

CostRecord schedule_cost(const PulseSchedule &schedule, const ChainLayout &layout) {
    CostRecord rec;
    rec.pulses = schedule.pulses.size();
    rec.per_qubit.assign(layout.cells.size(), 0);
    for (const auto &p : schedule.pulses) {
        for (size_t q : touched_cells(p, layout)) {
            rec.per_qubit[q]++;
        }
    }
    for (size_t c : rec.per_qubit) {
        rec.max_per_qubit = std::max(rec.max_per_qubit, c);
        rec.qubits_touched += c > 0;
    }
    return rec;
}

static std::string species_tag(Species s) {
    return std::string(1, species_char(s));
}

nlohmann::json schedule_to_json(const PulseSchedule &s) {
    nlohmann::json j;
    j["meta"] = {{"gadget", s.meta.gadget}, {"level", s.meta.level}, {"params", s.meta.params}};
    j["pulses"] = nlohmann::json::array();
    for (const auto &p : s.pulses) {
        nlohmann::json e;
        if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
            e["op"] = "species_unitary";
            e["species"] = species_tag(u->species);
            if (u->gate == Gate::H) {
                e["gate"] = "H";
            } else if (u->gate == Gate::X) {
                e["gate"] = "X";
            } else {
                e["gate"] = {{"Z", u->theta}};
            }
        } else if (const auto *w = std::get_if<CouplingWindow>(&p)) {
            e["op"] = "coupling";
            e["pairs"] = nlohmann::json::array();
            for (Pair pr : w->pairs) {
                e["pairs"].push_back(pair_name(pr));
            }
            e["angle"] = w->angle;
        } else if (std::holds_alternative<ResetC>(p)) {
            e["op"] = "reset_c";
        } else {
            throw std::invalid_argument("site-addressed pseudo-pulse cannot be serialized");
        }
        j["pulses"].push_back(e);
    }
    return j;
}

static double finite_angle(const nlohmann::json &v) {
    if (!v.is_number()) {
        throw std::invalid_argument("angle must be a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw std::invalid_argument("non-finite angle");
    }
    return d;
}

PulseSchedule schedule_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("pulses") || !j["pulses"].is_array()) {
        throw std::invalid_argument("missing field 'pulses'");
    }
    PulseSchedule s;
    if (j.contains("meta")) {
        const auto &m = j["meta"];
        s.meta.gadget = m.value("gadget", std::string());
        s.meta.level = m.value("level", 0);
        s.meta.params = m.value("params", nlohmann::json::object());
        if (s.meta.level < 0) {
            throw std::invalid_argument("meta.level must be >= 0");
        }
    }
    for (const auto &e : j["pulses"]) {
        if (!e.is_object() || !e.contains("op") || !e["op"].is_string()) {
            throw std::invalid_argument("missing field 'op'");
        }
        std::string op = e["op"].get<std::string>();
        if (op == "species_unitary") {
            if (!e.contains("species") || !e.contains("gate")) {
                throw std::invalid_argument("species_unitary needs 'species' and 'gate'");
            }
            std::string sp = e["species"].get<std::string>();
            if (sp.size() != 1) {
                throw std::invalid_argument("unknown species '" + sp + "'");
            }
            Species species = species_from_char(sp[0]);
            const auto &g = e["gate"];
            if (g.is_string() && g.get<std::string>() == "H") {
                s.push(species_h(species));
            } else if (g.is_string() && g.get<std::string>() == "X") {
                s.push(species_x(species));
            } else if (g.is_object() && g.contains("Z")) {
                s.push(species_z(species, finite_angle(g["Z"])));
            } else {
                throw std::invalid_argument("unknown gate " + g.dump());
            }
        } else if (op == "coupling") {
            if (!e.contains("pairs") || !e.contains("angle") || !e["pairs"].is_array()) {
                throw std::invalid_argument("coupling needs 'pairs' and 'angle'");
            }
            std::vector<Pair> pairs;
            for (const auto &pr : e["pairs"]) {
                pairs.push_back(pair_from_name(pr.get<std::string>()));
            }
            if (pairs.empty()) {
                throw std::invalid_argument("coupling with empty pair set");
            }
            s.push(window(pairs, finite_angle(e["angle"])));
        } else if (op == "reset_c") {
            s.push(reset_c());
        } else {
            throw std::invalid_argument("unknown pulse kind '" + op + "'");
        }
    }
    return s;
}

std::string serialize(const PulseSchedule &s) {
    return schedule_to_json(s).dump();
}

PulseSchedule parse(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return schedule_from_json(j);
}

std::string describe(const Pulse &p) {
    std::ostringstream out;
    if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
        out << (u->gate == Gate::H ? "H" : u->gate == Gate::X ? "X" : "Z") << "_" << species_char(u->species);
        if (u->gate == Gate::Z) {
            out << "(" << u->theta << ")";
        }
    } else if (const auto *w = std::get_if<CouplingWindow>(&p)) {
        out << "W{";
        for (size_t k = 0; k < w->pairs.size(); k++) {
            out << (k ? "," : "") << pair_name(w->pairs[k]);
        }
        out << "}(" << w->angle << ")";
    } else if (std::holds_alternative<ResetC>(p)) {
        out << "RESET_C";
    } else {
        out << "SITE[" << std::get<SiteAddressed>(p).site << "]";
    }
    return out.str();
}

}  // namespace globalchain
