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

#include "globalchain/stabsim.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace globalchain {

double Rng::uniform() {
    return (double)(eng_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::below(uint64_t n) {
    // rejection keeps it exact
    uint64_t lim = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
        x = eng_();
    } while (x >= lim);
    return x % n;
}

uint64_t Rng::geometric(double p) {
    if (p <= 0) return std::numeric_limits<uint64_t>::max();
    if (p >= 1) return 0;
    double u = uniform();
    double g = std::floor(std::log1p(-u) / std::log1p(-p));
    if (g >= 1e18) return std::numeric_limits<uint64_t>::max();
    return (uint64_t)g;
}

uint64_t derive_seed(uint64_t base, uint64_t k) {
    uint64_t z = base + 0x9E3779B97F4A7C15ull * (k + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<NoiseEvent> sample_noise(const NoiseModel &noise, const Pulse &pulse, const ChainLayout &layout, Rng &rng) {
    std::vector<NoiseEvent> out;
    for (size_t q = 0; q < layout.size(); q++) {
        double p = pulse_touches(pulse, layout, q) ? noise.eps : noise.eps_idle;
        if (rng.uniform() < p) {
            out.push_back({q, "XYZ"[rng.below(3)]});
        }
    }
    return out;
}

// ---------------------------------------------------------------- tableau

Tableau Tableau::zero(size_t n) {
    Tableau t;
    t.n_ = n;
    for (size_t q = 0; q < n; q++) {
        PauliString z(n), x(n);
        z.zs[q] = 1;
        x.xs[q] = 1;
        t.stab_.push_back(z);
        t.destab_.push_back(x);
    }
    return t;
}

void Tableau::apply_pulse(const Pulse &pulse, const ChainLayout &layout) {
    if (layout.size() != n_) {
        throw std::invalid_argument("tableau size does not match layout");
    }
    if (std::holds_alternative<ResetC>(pulse)) {
        for (size_t q : layout.cells_of(Species::C)) reset(q);
        return;
    }
    for (auto &p : stab_) conj_pulse(p, pulse, layout);
    for (auto &p : destab_) conj_pulse(p, pulse, layout);
}

void Tableau::apply_pauli(const PauliString &p) {
    for (auto &s : stab_) {
        if (!s.commutes(p)) s.phase ^= 2;
    }
}

void Tableau::h(size_t q) {
    for (auto &p : stab_) conj_h(p, q);
    for (auto &p : destab_) conj_h(p, q);
}

void Tableau::rz_quarter(size_t q, int k) {
    for (auto &p : stab_) conj_z_rotation(p, q, k);
    for (auto &p : destab_) conj_z_rotation(p, q, k);
}

void Tableau::zz_quarter(size_t a, size_t b, int k) {
    for (auto &p : stab_) conj_zz_rotation(p, a, b, k);
    for (auto &p : destab_) conj_zz_rotation(p, a, b, k);
}

int Tableau::measure(const PauliString &obs, Rng *rng, bool *deterministic) {
    size_t piv = n_;
    for (size_t i = 0; i < n_; i++) {
        if (!stab_[i].commutes(obs)) {
            piv = i;
            break;
        }
    }
    if (piv == n_) {
        if (deterministic) *deterministic = true;
        return expectation(obs) == 1 ? 0 : 1;
    }
    if (deterministic) *deterministic = false;
    for (size_t i = 0; i < n_; i++) {
        if (i != piv && !stab_[i].commutes(obs)) stab_[i] *= stab_[piv];
        if (i != piv && !destab_[i].commutes(obs)) destab_[i] *= stab_[piv];
    }
    destab_[piv] = stab_[piv];
    int outcome = rng ? (int)rng->below(2) : 0;
    PauliString o = obs;
    o.phase = (uint8_t)((o.phase + (outcome ? 2 : 0)) & 3);
    stab_[piv] = o;
    return outcome;
}

int Tableau::measure_z(size_t q, Rng *rng, bool *deterministic) {
    PauliString z(n_);
    z.zs[q] = 1;
    return measure(z, rng, deterministic);
}

void Tableau::reset(size_t q, Rng *rng) {
    if (measure_z(q, rng)) {
        PauliString x(n_);
        x.xs[q] = 1;
        apply_pauli(x);
    }
}

int Tableau::expectation(const PauliString &p) const {
    for (const auto &s : stab_) {
        if (!s.commutes(p)) return 0;
    }
    PauliString acc(n_);
    for (size_t i = 0; i < n_; i++) {
        if (!destab_[i].commutes(p)) acc *= stab_[i];
    }
    if (!acc.same_up_to_phase(p)) {
        throw std::logic_error("tableau lost independence");
    }
    return ((acc.phase - p.phase) & 3) == 0 ? 1 : -1;
}

bool Tableau::same_state(const Tableau &o) const {
    if (o.n_ != n_) return false;
    for (const auto &s : o.stab_) {
        if (expectation(s) != 1) return false;
    }
    return true;
}

PulseSchedule clifford_normal_form(const PulseSchedule &s) {
    PulseSchedule out;
    out.meta = s.meta;
    out.meta.params.erase("readouts");
    out.meta.params.erase("decode_at");
    bool flip[3] = {false, false, false};
    double zacc[3] = {0, 0, 0};
    std::map<Pair, double> wacc;
    auto sidx = [](Species x) { return (int)x; };
    auto flush_diag = [&]() {
        for (auto &[p, a] : wacc) {
            if (std::abs(a) > 1e-15) out.push(window({p}, a));
        }
        wacc.clear();
        for (int k = 0; k < 3; k++) {
            if (std::abs(zacc[k]) > 1e-15) out.push(species_z((Species)k, zacc[k]));
            zacc[k] = 0;
        }
    };
    auto flush_x = [&](int only) {
        for (int k = 0; k < 3; k++) {
            if (flip[k] && (only < 0 || only == k)) {
                out.push(species_x((Species)k));
                flip[k] = false;
            }
        }
    };
    auto pair_species = [](Pair p) -> std::pair<int, int> {
        switch (p) {
            case Pair::AB: return {0, 1};
            case Pair::AC: return {0, 2};
            case Pair::BC: return {1, 2};
            case Pair::AA: return {0, 0};
            default: return {1, 1};
        }
    };
    for (const auto &p : s.pulses) {
        if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
            int k = sidx(u->species);
            if (u->gate == Gate::X) {
                flip[k] = !flip[k];
            } else if (u->gate == Gate::Z) {
                zacc[k] += flip[k] ? -u->theta : u->theta;
            } else {
                flush_diag();
                flush_x(k);
                out.push(p);
            }
        } else if (const auto *w = std::get_if<CouplingWindow>(&p)) {
            for (Pair pr : w->pairs) {
                auto [a, b] = pair_species(pr);
                bool odd = flip[a] != flip[b];
                wacc[pr] += odd ? -w->angle : w->angle;
            }
        } else if (std::holds_alternative<ResetC>(p)) {
            flush_diag();
            flip[2] = false;  // X before a reset does nothing
            out.push(p);
        } else {
            flush_diag();
            flush_x(-1);
            out.push(p);
        }
    }
    flush_diag();
    flush_x(-1);
    return out;
}

// ---------------------------------------------------------------- schedule metadata

std::vector<Readout> schedule_readouts(const PulseSchedule &s) {
    std::vector<Readout> out;
    const auto &p = s.meta.params;
    if (!p.contains("readouts")) return out;
    for (const auto &r : p.at("readouts")) {
        out.push_back({r.at("at").get<size_t>(), r.at("cell").get<size_t>(), r.at("block").get<size_t>(),
                       r.at("logical").get<size_t>(), r.at("generator").get<size_t>()});
    }
    return out;
}

std::optional<size_t> schedule_decode_point(const PulseSchedule &s) {
    if (!s.meta.params.contains("decode_at")) return std::nullopt;
    return s.meta.params.at("decode_at").get<size_t>();
}

static std::vector<Interval> block_spans(const ChainLayout &layout) {
    auto spans = spans_of(layout, NodeKind::ABlock, layout.config.level);
    if (spans.empty()) spans = species_runs(layout, Species::A);
    return spans;
}

std::vector<size_t> code_cells(const ChainLayout &layout, const CodeSpec &code, size_t block, size_t logical) {
    auto spans = block_spans(layout);
    if (block >= spans.size()) throw std::out_of_range("no such block");
    if (code.k_logical != 1 || logical > 1) throw std::invalid_argument("two single-logical codes per block expected");
    RoleScheme rs = role_scheme(layout.config.code_id);
    if (rs.data_per_half != code.n_physical) {
        throw std::invalid_argument("layout '" + layout.config.code_id + "' does not host code '" + code.name + "'");
    }
    Interval b = spans[block];
    bool right = (logical ^ (block & 1)) != 0;
    std::vector<size_t> out;
    for (size_t j = 0; j < rs.data_per_half; j++) {
        size_t k = rs.syndrome_per_half + j;
        out.push_back(right ? b.hi - 1 - k : b.lo + k);
    }
    return out;
}

PauliString place_on_slot(const PauliString &op, const ChainLayout &layout, const CodeSpec &code, size_t block,
                          size_t logical) {
    auto cells = code_cells(layout, code, block, logical);
    PauliString out(layout.size());
    for (size_t j = 0; j < cells.size(); j++) {
        out.xs[cells[j]] = op.xs[j];
        out.zs[cells[j]] = op.zs[j];
    }
    out.phase = op.phase;
    return out;
}

Tableau prepare_code_state(const ChainLayout &layout, const CodeSpec &code, char basis) {
    Tableau t = Tableau::zero(layout.size());
    size_t nblocks = block_spans(layout).size();
    for (size_t b = 0; b < nblocks; b++) {
        for (size_t l = 0; l < 2; l++) {
            for (size_t g = 0; g < code.generators.size(); g++) {
                if (t.measure(place_on_slot(code.generators[g], layout, code, b, l))) {
                    t.apply_pauli(place_on_slot(decode(code, uint64_t{1} << g).correction, layout, code, b, l));
                }
            }
            const auto &obs = basis == 'X' ? code.logical_x[0] : code.logical_z[0];
            const auto &fix = basis == 'X' ? code.logical_z[0] : code.logical_x[0];
            if (t.measure(place_on_slot(obs, layout, code, b, l))) {
                t.apply_pauli(place_on_slot(fix, layout, code, b, l));
            }
        }
    }
    return t;
}

TableauRun run_schedule(Tableau &t, const PulseSchedule &s, const ChainLayout &layout, Rng *rng) {
    TableauRun out;
    auto ro = schedule_readouts(s);
    std::stable_sort(ro.begin(), ro.end(), [](const Readout &a, const Readout &b) { return a.at < b.at; });
    size_t next = 0;
    for (size_t k = 0; k <= s.size(); k++) {
        for (; next < ro.size() && ro[next].at == k; next++) {
            bool det = true;
            out.outcomes.push_back(t.measure_z(ro[next].cell, rng, &det));
            out.all_deterministic = out.all_deterministic && det;
        }
        if (k < s.size()) t.apply_pulse(s.pulses[k], layout);
    }
    return out;
}

// ---------------------------------------------------------------- frame engine

namespace {

struct FrameOp {
    enum Kind { Nop, H, S, ZZ, Reset } kind = Nop;
    std::vector<uint32_t> cells;
    std::vector<std::pair<uint32_t, uint32_t>> bonds;
    std::vector<uint32_t> touched, idle;
};

struct Slot {
    std::vector<size_t> cells;
};

struct Round {
    std::vector<FrameOp> ops;
    std::vector<Readout> readouts;  // sorted by at
    std::optional<size_t> decode_at;
};

struct Program {
    size_t n = 0;
    std::vector<Round> rounds;
    std::vector<Slot> slots;  // (block, logical) -> code cells
    size_t r = 0;             // generator count
    // decoder correction per syndrome as (x, z) bit vectors over code qubits
    std::vector<std::pair<uint64_t, uint64_t>> table;
};

Program compile_program(const std::vector<PulseSchedule> &schedules, const ChainLayout &layout, const CodeSpec &code) {
    Program prog;
    prog.n = layout.size();
    prog.r = code.generators.size();
    if (code.n_physical > 64 || prog.r > 20) throw std::invalid_argument("code too large for the frame engine");
    size_t nblocks = block_spans(layout).size();
    for (size_t b = 0; b < nblocks; b++) {
        for (size_t l = 0; l < 2; l++) prog.slots.push_back({code_cells(layout, code, b, l)});
    }
    prog.table.resize(size_t{1} << prog.r);
    for (uint64_t s = 0; s < prog.table.size(); s++) {
        PauliString c = decode(code, s).correction;
        uint64_t x = 0, z = 0;
        for (size_t j = 0; j < c.size(); j++) {
            x |= (uint64_t)c.xs[j] << j;
            z |= (uint64_t)c.zs[j] << j;
        }
        prog.table[s] = {x, z};
    }
    for (const auto &s : schedules) {
        Round rd;
        for (const auto &p : s.pulses) {
            FrameOp op;
            if (const auto *u = std::get_if<SpeciesUnitary>(&p)) {
                auto cs = layout.cells_of(u->species);
                op.cells.assign(cs.begin(), cs.end());
                if (u->gate == Gate::H) {
                    op.kind = FrameOp::H;
                } else if (u->gate == Gate::Z && (quarter_turns(u->theta) & 1)) {
                    op.kind = FrameOp::S;
                } else {
                    quarter_turns(u->gate == Gate::Z ? u->theta : 0);
                    op.kind = FrameOp::Nop;
                }
            } else if (const auto *w = std::get_if<CouplingWindow>(&p)) {
                if (quarter_turns(w->angle) & 1) {
                    op.kind = FrameOp::ZZ;
                    for (auto [a, b] : active_bonds(*w, layout)) op.bonds.emplace_back((uint32_t)a, (uint32_t)b);
                }
            } else if (std::holds_alternative<ResetC>(p)) {
                op.kind = FrameOp::Reset;
                auto cs = layout.cells_of(Species::C);
                op.cells.assign(cs.begin(), cs.end());
            } else {
                throw std::invalid_argument("site-addressed pulse in schedule");
            }
            for (size_t q = 0; q < layout.size(); q++) {
                (pulse_touches(p, layout, q) ? op.touched : op.idle).push_back((uint32_t)q);
            }
            rd.ops.push_back(std::move(op));
        }
        rd.readouts = schedule_readouts(s);
        std::stable_sort(rd.readouts.begin(), rd.readouts.end(),
                         [](const Readout &a, const Readout &b) { return a.at < b.at; });
        for (const auto &ro : rd.readouts) {
            if (ro.at > s.size() || ro.cell >= prog.n || ro.generator >= prog.r) {
                throw std::invalid_argument("readout outside schedule/code");
            }
        }
        rd.decode_at = schedule_decode_point(s);
        prog.rounds.push_back(std::move(rd));
    }
    return prog;
}

// Noise stream over (op, listed cell, lane) positions with geometric skips.
struct NoiseStream {
    double p;
    uint64_t skip;
    explicit NoiseStream(double p_, Rng &rng) : p(p_), skip(rng.geometric(p_)) {}
};

struct Engine {
    const Program &prog;
    uint64_t lanes;  // mask of active lanes
    std::vector<uint64_t> x, z;
    uint64_t errors = 0;
    bool flagged = false;
    // optional per-round syndrome words: [round][slot][generator]
    std::vector<std::vector<std::vector<uint64_t>>> *syndromes = nullptr;

    Engine(const Program &p, uint64_t mask) : prog(p), lanes(mask), x(p.n, 0), z(p.n, 0) {}

    void inject(const PauliString &e) {
        for (size_t q = 0; q < e.size() && q < prog.n; q++) {
            if (e.xs[q]) x[q] ^= lanes;
            if (e.zs[q]) z[q] ^= lanes;
        }
    }

    void apply(const FrameOp &op) {
        switch (op.kind) {
            case FrameOp::Nop:
                break;
            case FrameOp::H:
                for (auto q : op.cells) std::swap(x[q], z[q]);
                break;
            case FrameOp::S:
                for (auto q : op.cells) z[q] ^= x[q];
                break;
            case FrameOp::ZZ:
                for (auto [a, b] : op.bonds) {
                    uint64_t t = x[a] ^ x[b];
                    z[a] ^= t;
                    z[b] ^= t;
                }
                break;
            case FrameOp::Reset:
                for (auto q : op.cells) x[q] = z[q] = 0;
                break;
        }
    }

    void noise(const std::vector<uint32_t> &cells, NoiseStream &ns, Rng &rng) {
        uint64_t count = (uint64_t)cells.size() * 64;
        while (ns.skip < count) {
            uint64_t pos = ns.skip;
            uint64_t bit = uint64_t{1} << (pos & 63);
            uint32_t q = cells[pos >> 6];
            if (bit & lanes) {
                switch (rng.below(3)) {
                    case 0:
                        x[q] ^= bit;
                        break;
                    case 1:
                        x[q] ^= bit, z[q] ^= bit;
                        break;
                    default:
                        z[q] ^= bit;
                }
                errors++;
            }
            uint64_t g = rng.geometric(ns.p);
            ns.skip = g == std::numeric_limits<uint64_t>::max() ? g : ns.skip + 1 + g;
        }
        if (ns.skip != std::numeric_limits<uint64_t>::max()) ns.skip -= count;
    }

    void decode_round(const std::vector<std::vector<uint64_t>> &synd) {
        for (size_t s = 0; s < prog.slots.size(); s++) {
            const auto &cells = prog.slots[s].cells;
            for (unsigned lane = 0; lane < 64; lane++) {
                uint64_t bit = uint64_t{1} << lane;
                if (!(lanes & bit)) continue;
                uint64_t sy = 0;
                for (size_t g = 0; g < prog.r; g++) sy |= ((synd[s][g] >> lane) & 1) << g;
                if (!sy) continue;
                auto [cx, cz] = prog.table[sy];
                for (size_t j = 0; j < cells.size(); j++) {
                    if (cx >> j & 1) x[cells[j]] ^= bit;
                    if (cz >> j & 1) z[cells[j]] ^= bit;
                }
            }
        }
    }

    void run(const NoiseModel &noise, Rng &rng) {
        NoiseStream busy(noise.eps, rng), idle(noise.eps_idle, rng);
        for (size_t ri = 0; ri < prog.rounds.size(); ri++) {
            const Round &rd = prog.rounds[ri];
            std::vector<std::vector<uint64_t>> synd(prog.slots.size(), std::vector<uint64_t>(prog.r, 0));
            size_t next = 0;
            auto checkpoint = [&](size_t at) {
                for (; next < rd.readouts.size() && rd.readouts[next].at == at; next++) {
                    const Readout &ro = rd.readouts[next];
                    size_t slot = ro.block * 2 + ro.logical;
                    if (slot >= synd.size()) throw std::invalid_argument("readout names a missing slot");
                    synd[slot][ro.generator] ^= x[ro.cell] & lanes;
                }
                if (rd.decode_at && *rd.decode_at == at) decode_round(synd);
            };
            for (size_t k = 0; k < rd.ops.size(); k++) {
                checkpoint(k);
                apply(rd.ops[k]);
                if (noise.eps > 0) this->noise(rd.ops[k].touched, busy, rng);
                if (noise.eps_idle > 0) this->noise(rd.ops[k].idle, idle, rng);
            }
            checkpoint(rd.ops.size());
            if (syndromes) syndromes->push_back(synd);
        }
    }

    // Failure word per slot after ideal decoding of the residual.
    std::vector<uint64_t> failures(const CodeSpec &code, LogicalBasis basis) const {
        std::vector<uint64_t> out(prog.slots.size(), 0);
        for (size_t s = 0; s < prog.slots.size(); s++) {
            const auto &cells = prog.slots[s].cells;
            for (unsigned lane = 0; lane < 64; lane++) {
                uint64_t bit = uint64_t{1} << lane;
                if (!(lanes & bit)) continue;
                PauliString r(cells.size());
                for (size_t j = 0; j < cells.size(); j++) {
                    r.xs[j] = (x[cells[j]] & bit) != 0;
                    r.zs[j] = (z[cells[j]] & bit) != 0;
                }
                r = decode(code, code.syndrome_of(r)).correction * r;
                auto f = logical_flips(code, r, basis);
                if (std::find(f.begin(), f.end(), true) != f.end()) out[s] |= bit;
            }
        }
        return out;
    }
};

}  // namespace

std::vector<bool> logical_failure(const PauliString &frame, const ChainLayout &layout, const CodeSpec &code,
                                  LogicalBasis basis, bool ideal_decode) {
    std::vector<bool> out;
    size_t nblocks = block_spans(layout).size();
    for (size_t b = 0; b < nblocks; b++) {
        for (size_t l = 0; l < 2; l++) {
            auto cells = code_cells(layout, code, b, l);
            PauliString r(cells.size());
            for (size_t j = 0; j < cells.size(); j++) {
                r.xs[j] = frame.xs[cells[j]];
                r.zs[j] = frame.zs[cells[j]];
            }
            if (ideal_decode) r = decode(code, code.syndrome_of(r)).correction * r;
            auto f = logical_flips(code, r, basis);
            out.push_back(std::find(f.begin(), f.end(), true) != f.end());
        }
    }
    return out;
}

nlohmann::json TrajectoryRecord::to_json() const {
    std::vector<int> f(failures.begin(), failures.end());
    std::string frame = final_frame.str();
    return {{"syndromes", syndromes},
            {"failures", f},
            {"error_count", error_count},
            {"decoder_flagged", decoder_flagged},
            {"final_frame", frame}};
}

TrajectoryRecord run_trajectory(const std::vector<PulseSchedule> &schedules, const ChainLayout &layout,
                                const CodeSpec &code, const NoiseModel &noise, const FrameOptions &opts) {
    if (noise.eps < 0 || noise.eps > 1 || noise.eps_idle < 0 || noise.eps_idle > 1) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
    Program prog = compile_program(schedules, layout, code);
    Engine eng(prog, 1);
    std::vector<std::vector<std::vector<uint64_t>>> synd;
    eng.syndromes = &synd;
    eng.inject(opts.injected);
    Rng rng(noise.seed);
    eng.run(noise, rng);
    TrajectoryRecord rec;
    for (const auto &round : synd) {
        std::vector<uint64_t> row;
        for (const auto &slot : round) {
            uint64_t s = 0;
            for (size_t g = 0; g < slot.size(); g++) s |= (slot[g] & 1) << g;
            row.push_back(s);
            if (decode(code, s).flagged) rec.decoder_flagged = true;
        }
        rec.syndromes.push_back(row);
    }
    for (uint64_t w : eng.failures(code, opts.basis)) rec.failures.push_back(w & 1);
    rec.final_frame = PauliString(prog.n);
    for (size_t q = 0; q < prog.n; q++) {
        rec.final_frame.xs[q] = eng.x[q] & 1;
        rec.final_frame.zs[q] = eng.z[q] & 1;
    }
    rec.error_count = eng.errors;
    return rec;
}

BatchResult run_frame_batch(const std::vector<PulseSchedule> &schedules, const ChainLayout &layout,
                            const CodeSpec &code, const NoiseModel &noise, uint64_t trials, unsigned jobs,
                            LogicalBasis basis) {
    if (noise.eps < 0 || noise.eps > 1 || noise.eps_idle < 0 || noise.eps_idle > 1) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
    Program prog = compile_program(schedules, layout, code);
    constexpr uint64_t kWordsPerChunk = 16;
    uint64_t words = (trials + 63) / 64;
    uint64_t chunks = (words + kWordsPerChunk - 1) / kWordsPerChunk;
    std::vector<BatchResult> per_chunk(chunks);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
        for (uint64_t c; (c = next.fetch_add(1)) < chunks;) {
            Rng rng(derive_seed(noise.seed, c));
            BatchResult r;
            for (uint64_t w = c * kWordsPerChunk; w < std::min(words, (c + 1) * kWordsPerChunk); w++) {
                uint64_t lanes_here = std::min<uint64_t>(64, trials - w * 64);
                uint64_t mask = lanes_here == 64 ? ~uint64_t{0} : (uint64_t{1} << lanes_here) - 1;
                Engine eng(prog, mask);
                eng.run(noise, rng);
                uint64_t any = 0;
                for (uint64_t f : eng.failures(code, basis)) any |= f;
                r.trials += lanes_here;
                r.failures += (uint64_t)std::popcount(any & mask);
                r.errors += eng.errors;
            }
            per_chunk[c] = r;
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, (unsigned)std::max<uint64_t>(1, chunks)));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; j++) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    BatchResult total;
    for (const auto &r : per_chunk) {
        total.trials += r.trials;
        total.failures += r.failures;
        total.errors += r.errors;
    }
    return total;
}

}  // namespace globalchain
