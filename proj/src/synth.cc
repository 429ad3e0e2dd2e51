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

#include "globalchain/synth.h"

#include <algorithm>
#include <bitset>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "globalchain/compiler.h"
#include "globalchain/stabsim.h"

namespace globalchain {

namespace {

constexpr double kQuarter = std::numbers::pi / 4;
using Vec = std::bitset<128>;

Vec to_vec(const PauliString &p, size_t m) {
    Vec v;
    for (size_t q = 0; q < p.size(); q++) {
        if (!p.xs[q] && !p.zs[q]) continue;
        if (q >= m) throw std::invalid_argument("Pauli leaves the left block");
        v[q] = p.xs[q];
        v[64 + q] = p.zs[q];
    }
    return v;
}

// Eliminates in the given candidate order; returns the candidate subset or nothing.
std::optional<std::vector<size_t>> eliminate(const std::vector<Vec> &cand, const std::vector<size_t> &order,
                                             Vec target) {
    struct Row {
        Vec v;
        std::bitset<256> combo;
        size_t pivot;
    };
    std::vector<Row> rows;
    for (size_t idx : order) {
        Row r{cand[idx], {}, 0};
        r.combo[idx] = true;
        for (const auto &b : rows) {
            if (r.v[b.pivot]) {
                r.v ^= b.v;
                r.combo ^= b.combo;
            }
        }
        if (r.v.none()) continue;
        for (size_t k = 0; k < 128; k++) {
            if (r.v[k]) {
                r.pivot = k;
                break;
            }
        }
        rows.push_back(std::move(r));
    }
    std::bitset<256> used;
    for (const auto &b : rows) {
        if (target[b.pivot]) {
            target ^= b.v;
            used ^= b.combo;
        }
    }
    if (target.any()) return std::nullopt;
    std::vector<size_t> out;
    for (size_t i = 0; i < cand.size(); i++) {
        if (used[i]) out.push_back(i);
    }
    return out;
}

}  // namespace

EdgeGeometry edge_geometry(const ChainLayout &layout) {
    std::string s = layout.species_string();
    size_t n = s.size();
    if (n < 6 || (n - 4) % 2 != 0) {
        throw std::invalid_argument("block synthesis needs a two-block chain A^m C B B C A^m");
    }
    size_t m = (n - 4) / 2;
    std::string want = std::string(m, 'A') + "CBBC" + std::string(m, 'A');
    if (s != want) {
        throw std::invalid_argument("block synthesis needs a two-block chain A^m C B B C A^m, got " + s);
    }
    if (m > 64) throw std::invalid_argument("blocks longer than 64 cells");
    return {m, m - 1, m, m + 1, m + 2};
}

EdgeOrbit::EdgeOrbit(const ChainLayout &layout, int t_max) : layout_(layout), geo_(edge_geometry(layout)) {
    t_max_ = t_max < 0 ? (int)std::max<size_t>(2, 2 * geo_.m) : t_max;
    if (t_max_ > 127) throw std::invalid_argument("orbit horizon too long");
    const Pulse mix[] = {window({Pair::AA}, kQuarter), species_h(Species::A)};
    for (char p : {'Z', 'X'}) {
        PauliString cur(layout_.size());
        cur.set(geo_.edge, p);
        auto &dst = p == 'Z' ? z_ : x_;
        dst.push_back(cur);
        for (int t = 1; t <= t_max_; t++) {
            for (int k = 1; k >= 0; k--) conj_pulse(cur, mix[k], layout_, true);
            dst.push_back(cur);
        }
    }
}

const PauliString &EdgeOrbit::at(int t, char p) const {
    return p == 'Z' ? z_.at(t) : x_.at(t);
}

std::optional<std::vector<OrbitFactor>> EdgeOrbit::factorize(const PauliString &target, uint64_t seed) const {
    size_t m = geo_.m;
    Vec goal = to_vec(target, m);
    std::vector<Vec> cand;
    std::vector<OrbitFactor> label;
    for (int t = 0; t <= t_max_; t++) {
        for (char p : {'Z', 'X'}) {
            cand.push_back(to_vec(at(t, p), m));
            label.push_back({t, p});
        }
    }
    auto to_factors = [&](std::vector<size_t> idx) {
        std::vector<OrbitFactor> out;
        for (size_t i : idx) out.push_back(label[i]);
        std::sort(out.begin(), out.end(), [](auto &a, auto &b) { return a.t != b.t ? a.t < b.t : a.p > b.p; });
        return out;
    };
    auto span_t = [&](const std::vector<size_t> &idx) {
        int hi = 0;
        for (size_t i : idx) hi = std::max(hi, label[i].t);
        return hi;
    };
    if (goal.none()) return std::vector<OrbitFactor>{};

    // exhaustive up to three factors
    std::unordered_map<Vec, size_t> where;
    for (size_t i = 0; i < cand.size(); i++) where.emplace(cand[i], i);
    std::optional<std::vector<size_t>> best;
    auto offer = [&](std::vector<size_t> idx) {
        if (!best || idx.size() < best->size() || (idx.size() == best->size() && span_t(idx) < span_t(*best))) {
            best = std::move(idx);
        }
    };
    for (size_t i = 0; i < cand.size(); i++) {
        if (cand[i] == goal) offer({i});
    }
    if (best) return to_factors(*best);
    for (size_t i = 0; i < cand.size(); i++) {
        auto it = where.find(goal ^ cand[i]);
        if (it != where.end() && it->second > i) offer({i, it->second});
    }
    if (best) return to_factors(*best);
    for (size_t i = 0; i < cand.size(); i++) {
        for (size_t j = i + 1; j < cand.size(); j++) {
            auto it = where.find(goal ^ cand[i] ^ cand[j]);
            if (it != where.end() && it->second > j) offer({i, j, it->second});
        }
    }
    if (best) return to_factors(*best);

    // randomized elimination orders
    Rng rng(seed);
    std::vector<size_t> order(cand.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    for (int trial = 0; trial < 600; trial++) {
        if (trial) {
            for (size_t i = order.size() - 1; i > 0; i--) std::swap(order[i], order[rng.below(i + 1)]);
        }
        auto sol = eliminate(cand, order, goal);
        if (!sol) return std::nullopt;  // outside the span for every order
        offer(*sol);
    }
    return to_factors(*best);
}

int EdgeOrbit::phase_exponent(const std::vector<OrbitFactor> &applied, const PauliString &target) const {
    PauliString acc(layout_.size());
    for (const auto &f : applied) acc = at(f.t, f.p) * acc;
    if (!acc.same_up_to_phase(target)) {
        throw std::logic_error("factor product does not match target");
    }
    return (acc.phase - target.phase) & 3;
}

void SweepBuilder::move_to(int t) {
    if (t < 0 || t > orbit_.t_max()) throw std::out_of_range("sweep time outside the orbit");
    for (; now_ < t; now_++) {
        schedule.push(window({Pair::AA}, kQuarter));
        schedule.push(species_h(Species::A));
    }
    for (; now_ > t; now_--) {
        schedule.push(species_h(Species::A));
        schedule.push(window({Pair::AA}, -kQuarter));
    }
}

void SweepBuilder::controlled_factor(const OrbitFactor &f) {
    // exp(i pi/4 Z_r P_e) with the register moved into C, then exp(-i pi/4 P_e) against C = |0>.
    if (f.p == 'X') schedule.push(species_h(Species::A));
    PulseSchedule sw = swap_sequence(Species::B);
    schedule.append(sw);
    schedule.push(window({Pair::AC}, kQuarter));
    schedule.append(sw);
    schedule.push(window({Pair::AC}, -kQuarter));
    if (f.p == 'X') schedule.push(species_h(Species::A));
}

void SweepBuilder::controlled(const PauliString &g, std::vector<OrbitFactor> factors) {
    if (!factors.empty()) {
        int lo = factors.front().t, hi = factors.back().t;
        int fwd = std::abs(now_ - lo), bwd = std::abs(now_ - hi);
        if (bwd < fwd) std::reverse(factors.begin(), factors.end());
    }
    for (const auto &f : factors) {
        move_to(f.t);
        controlled_factor(f);
    }
    int lambda = orbit_.phase_exponent(factors, g);
    // each factor leaves exp(-i pi/4 Z_r); lambda != 0 needs a controlled phase i^lambda undone
    int q = ((lambda - (int)factors.size()) % 4 + 4) % 4;
    static const double kAngle[] = {0, kQuarter, 2 * kQuarter, -kQuarter};
    if (q) schedule.push(species_z(Species::B, kAngle[q]));
}

void SweepBuilder::measure(const PauliString &g, const std::vector<OrbitFactor> &factors, size_t logical,
                           size_t generator) {
    const auto &geo = orbit_.geometry();
    schedule.push(species_h(Species::B));
    controlled(g, factors);
    schedule.push(species_h(Species::B));
    for (auto [cell, block] : {std::pair{geo.b_cell, 0}, std::pair{geo.b_right, 1}}) {
        readouts.push_back({{"at", schedule.size()},
                            {"cell", cell},
                            {"block", block},
                            {"logical", logical},
                            {"generator", generator}});
    }
    schedule.append(swap_sequence(Species::B));
    schedule.push(reset_c());
}

void SweepBuilder::rotate(const PauliString &g, const std::vector<OrbitFactor> &factors, double theta) {
    schedule.push(species_h(Species::B));
    controlled(g, factors);
    schedule.push(species_h(Species::B));
    schedule.push(species_z(Species::B, theta));
    schedule.push(species_h(Species::B));
    controlled(g, factors);
    schedule.push(species_h(Species::B));
}

}  // namespace globalchain
