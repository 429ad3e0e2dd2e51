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

#include "globalchain/compiler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "globalchain/densesim.h"
#include "globalchain/stabsim.h"
#include "globalchain/synth.h"

namespace globalchain {

#include "mirror_table.inc"

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4;

std::string sp(Species s) {
    return std::string(1, species_char(s));
}

CompilationResult finish(PulseSchedule s, std::string gadget, int level, nlohmann::json params, ClaimedAction claim,
                         const ChainLayout &layout) {
    s.meta.gadget = std::move(gadget);
    s.meta.level = level;
    for (auto &[k, v] : params.items()) s.meta.params[k] = v;
    ValidationReport rep = validate_schedule(s);
    if (!rep.legal) {
        throw std::logic_error("compiled " + s.meta.gadget + " is not globally legal: " + rep.violations[0].reason);
    }
    CompilationResult r;
    r.budget = schedule_cost(s, layout);
    r.schedule = std::move(s);
    r.claimed_action = std::move(claim);
    return r;
}

std::vector<size_t> c_adjacent(const ChainLayout &layout, Species s, bool syndrome_only = false) {
    std::vector<size_t> out;
    for (size_t q = 0; q < layout.size(); q++) {
        if (layout.cells[q].species != s) continue;
        bool left = q > 0 && layout.cells[q - 1].species == Species::C;
        bool right = q + 1 < layout.size() && layout.cells[q + 1].species == Species::C;
        if ((left || right) && (!syndrome_only || layout.cells[q].role == CellRole::Syndrome)) out.push_back(q);
    }
    return out;
}

nlohmann::json runs_json(const std::vector<Interval> &runs) {
    nlohmann::json j = nlohmann::json::array();
    for (auto r : runs) j.push_back({r.lo, r.hi});
    return j;
}

// Uniform Z(alpha) plus an s-C window(beta) giving each site of every run -pi/4 * (in-run degree),
// mod pi, with C in |0>. Quarter-turn units.
std::pair<int, int> solve_dressing(const ChainLayout &layout, Species s) {
    auto runs = species_runs(layout, s);
    for (int b = 0; b < 4; b++) {
        for (int a = 0; a < 4; a++) {
            bool ok = true;
            for (auto r : runs) {
                for (size_t q = r.lo; q < r.hi && ok; q++) {
                    int deg = (q > r.lo) + (q + 1 < r.hi);
                    int cnb = (q == r.lo && q > 0 && layout.cells[q - 1].species == Species::C) +
                              (q + 1 == r.hi && q + 1 < layout.size() && layout.cells[q + 1].species == Species::C);
                    ok = (a + cnb * b + deg) % 4 == 0;
                }
            }
            if (ok) return {a, b};
        }
    }
    throw std::invalid_argument("no exact species-global CZbar dressing for species " + sp(s) + " on chain " +
                                layout.species_string() + " (runs at a free chain end must have length <= 2)");
}

double quarter_angle(int k) {
    static const double table[] = {0, kQuarter, -2 * kQuarter, -kQuarter};
    return table[((k % 4) + 4) % 4];
}

}  // namespace

nlohmann::json ClaimedAction::to_json() const {
    return {{"family", family}, {"roles", roles}, {"preconditions", preconditions}};
}

const std::vector<std::string> &gadget_names() {
    static const std::vector<std::string> names = {
        "global_S",     "mirror_cycle",   "decouple",      "edge_phase",
        "edge_rotation", "cz_ab",         "swap_interface", "syndrome_reset",
        "interblock_cz", "intrablock_transversal_cz", "ancilla_reset", "ec_round"};
    return names;
}

ChainLayout demo_layout(const std::string &g, int level) {
    if (g == "global_S") return make_chain("CAAAAC");
    if (g == "mirror_cycle") return make_chain(level >= 1 ? "CBBBBC" : "CBBC");
    if (g == "decouple" || g == "cz_ab") return make_chain("ACB");
    if (g == "edge_phase") return make_chain("AAC");
    if (g == "edge_rotation") return make_chain("BCAA");
    if (g == "swap_interface") return make_chain("AACB");
    if (g == "ancilla_reset") return make_chain("ACBBCA");
    if (g == "syndrome_reset") return build_layout({4, 0, 2, "bare_s"});
    if (g == "interblock_cz" || g == "intrablock_transversal_cz") return build_layout({2, 0, 2, "bare"});
    if (g == "ec_round") return build_layout({26, 0, 2, "steane"});
    throw std::invalid_argument("unknown gadget '" + g + "'");
}

int k_mirror(size_t n) {
    if (n == 0 || n > kMirrorTableMax) {
        throw std::invalid_argument("unknown subchain length " + std::to_string(n) + " for the mirror table");
    }
    return kMirrorTable[n];
}

CompilationResult compile_global_S(const std::set<Species> &species, const ChainLayout &layout) {
    if (species.empty()) throw std::invalid_argument("global_S needs a non-empty species set");
    std::vector<Pair> intra;
    PulseSchedule s;
    nlohmann::json runs = nlohmann::json::object();
    std::vector<std::pair<Species, std::pair<int, int>>> dress;
    for (Species x : species) {
        if (x == Species::C) throw std::invalid_argument("global_S acts on A and B only");
        intra.push_back(x == Species::A ? Pair::AA : Pair::BB);
        dress.push_back({x, solve_dressing(layout, x)});
        runs[sp(x)] = runs_json(species_runs(layout, x));
    }
    s.push(window(intra, kQuarter));
    for (auto &[x, ab] : dress) {
        if (ab.first % 4) s.push(species_z(x, quarter_angle(ab.first)));
    }
    for (auto &[x, ab] : dress) {
        if (ab.second % 4) s.push(window({x == Species::A ? Pair::AC : Pair::BC}, quarter_angle(ab.second)));
    }
    for (Species x : species) s.push(species_h(x));
    ClaimedAction c{"S = H.CZbar on every maximal run of the species", {{"runs", runs}}, "C cells in |0>"};
    std::string set;
    for (Species x : species) set += species_char(x);
    return finish(std::move(s), "global_S", 0, {{"species_set", set}}, std::move(c), layout);
}

CompilationResult compile_mirror_cycle(Species species, int level, const ChainLayout &layout) {
    auto runs = species_runs(layout, species);
    if (runs.empty()) throw std::invalid_argument("no " + sp(species) + " subchains in layout");
    size_t n;
    if (layout.custom) {
        n = runs[0].size();
        for (auto r : runs) {
            if (r.size() != n) throw std::invalid_argument("unknown subchain length: runs differ in length");
        }
    } else {
        n = block_length(layout.config.n_comp, level - 1);
        if (std::none_of(runs.begin(), runs.end(), [&](Interval r) { return r.size() == n; })) {
            throw std::invalid_argument("no level-" + std::to_string(level) + " " + sp(species) + " subchains");
        }
    }
    int k = k_mirror(n);
    PulseSchedule step = compile_global_S({species}, layout).schedule;
    PulseSchedule s;
    for (int i = 0; i < k; i++) s.append(step);
    nlohmann::json mirrored = nlohmann::json::array();
    for (auto r : runs) {
        if (r.size() == n) mirrored.push_back({r.lo, r.hi});
    }
    ClaimedAction c{"spatial reversal of every length-n run (identity local frame)",
                    {{"runs", mirrored}, {"n", n}, {"steps", k}},
                    "C cells in |0>"};
    return finish(std::move(s), "mirror_cycle", level, {{"species", sp(species)}, {"n", n}}, std::move(c), layout);
}

CompilationResult compile_decoupling(const std::vector<Pair> &keep, double angle) {
    const std::vector<Pair> cross = {Pair::AB, Pair::AC, Pair::BC};
    for (Pair p : keep) {
        if (std::find(cross.begin(), cross.end(), p) == cross.end()) {
            throw std::invalid_argument(std::string("decoupling keeps inter-species pairs only, got ") + pair_name(p));
        }
    }
    // species classes joined by kept pairs
    int cls[3] = {0, 1, 2};
    auto find = [&](int a) {
        while (cls[a] != a) a = cls[a];
        return a;
    };
    auto ends = [](Pair p) -> std::pair<int, int> {
        if (p == Pair::AB) return {0, 1};
        if (p == Pair::AC) return {0, 2};
        return {1, 2};
    };
    for (Pair p : keep) {
        auto [a, b] = ends(p);
        cls[find(a)] = find(b);
    }
    for (Pair p : cross) {
        if (std::find(keep.begin(), keep.end(), p) != keep.end()) continue;
        auto [a, b] = ends(p);
        if (find(a) == find(b)) {
            throw std::invalid_argument(std::string("decoupling conflict: ") + pair_name(p) +
                                        " must be refocused, but its species are tied by kept pairs (one of them "
                                        "would have to be both flipped and not flipped)");
        }
    }
    PulseSchedule s;
    nlohmann::json kept = nlohmann::json::array();
    for (Pair p : keep) kept.push_back(pair_name(p));
    ClaimedAction c{"exp(i angle Z Z) on kept pairs, identity on the rest", {{"kept", kept}, {"angle", angle}}, ""};
    ChainLayout ref = demo_layout("decouple");
    if (angle == 0) return finish(std::move(s), "decouple", 0, {{"keep", kept}, {"angle", angle}}, std::move(c), ref);
    std::vector<std::vector<Species>> classes;
    std::map<int, size_t> slot;
    for (int x = 0; x < 3; x++) {
        int r = find(x);
        if (!slot.count(r)) {
            slot[r] = classes.size();
            classes.push_back({});
        }
        classes[slot[r]].push_back((Species)x);
    }
    auto flip = [&](const std::vector<Species> &cl) {
        for (Species x : cl) s.push(species_x(x));
    };
    if (classes.size() == 1) {
        s.push(window(cross, angle));
    } else if (classes.size() == 2) {
        const auto &f = classes[0].size() <= classes[1].size() ? classes[0] : classes[1];
        s.push(window(cross, angle / 2));
        flip(f);
        s.push(window(cross, angle / 2));
        flip(f);
    } else {
        // Walsh pattern: flip sets {}, {A}, {A,B}, {B}
        s.push(window(cross, angle / 4));
        s.push(species_x(Species::A));
        s.push(window(cross, angle / 4));
        s.push(species_x(Species::B));
        s.push(window(cross, angle / 4));
        s.push(species_x(Species::A));
        s.push(window(cross, angle / 4));
        s.push(species_x(Species::B));
    }
    return finish(std::move(s), "decouple", 0, {{"keep", kept}, {"angle", angle}}, std::move(c), ref);
}

CompilationResult compile_edge_phase(Species species, double angle) {
    if (species == Species::C) throw std::invalid_argument("edge_phase acts on A or B");
    PulseSchedule s;
    s.push(reset_c());
    s.append(compile_decoupling({species == Species::A ? Pair::AC : Pair::BC}, angle).schedule);
    ClaimedAction c{"exp(i angle Z) on every C-adjacent " + sp(species) + " cell, identity elsewhere",
                    {{"species", sp(species)}, {"angle", angle}},
                    "C cells end in |0>"};
    return finish(std::move(s), "edge_phase", 0, {{"species", sp(species)}, {"angle", angle}}, std::move(c),
                  demo_layout("edge_phase"));
}

CompilationResult compile_cz_ab(int level) {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    auto win = [](Pair p, double a) { return compile_decoupling({p}, a).schedule; };
    PulseSchedule s;
    // rightmost factor of the product first
    s.append(win(Pair::BC, -kQuarter));
    s.push(species_z(Species::C, kQuarter));
    s.push(species_h(Species::C));
    s.append(win(Pair::AC, -kQuarter));
    s.push(species_z(Species::C, kQuarter));
    s.push(species_h(Species::C));
    s.append(win(Pair::BC, kQuarter));
    s.push(species_z(Species::C, -kQuarter));
    s.push(species_h(Species::C));
    s.push(species_z(Species::C, -kQuarter));
    s.append(win(Pair::AC, kQuarter));
    s.push(species_h(Species::C));
    ClaimedAction c{"CZ between the A and B cells flanking each C; identity on C and bulk", {}, ""};
    return finish(std::move(s), "cz_ab", level, {}, std::move(c), demo_layout("cz_ab"));
}

PulseSchedule swap_sequence(Species side) {
    if (side == Species::C) throw std::invalid_argument("swap_interface side must be A or B");
    Pair pr = side == Species::A ? Pair::AC : Pair::BC;
    auto dress = [&](PulseSchedule &s) {
        s.push(window({pr}, kQuarter));
        s.push(species_z(side, -kQuarter));
        s.push(species_z(Species::C, -kQuarter));
    };
    // three CZ-based CNOTs: C<-s, s<-C, C<-s; the closing H on s cancels the bulk residue
    PulseSchedule s;
    dress(s);
    s.push(species_h(Species::C));
    s.push(species_h(side));
    dress(s);
    s.push(species_h(side));
    s.push(species_h(Species::C));
    dress(s);
    s.push(species_h(Species::C));
    s.push(species_h(side));
    return s;
}

CompilationResult compile_swap_interface(Species side) {
    PulseSchedule s = swap_sequence(side);
    ClaimedAction c{"SWAP between every C cell and its adjacent " + sp(side) + " cell", {{"side", sp(side)}}, ""};
    ChainLayout ref = make_chain(side == Species::A ? "AACB" : "ACBB");
    return finish(std::move(s), "swap_interface", 0, {{"side", sp(side) + "-C"}}, std::move(c), ref);
}

CompilationResult compile_syndrome_reset(int level, const ChainLayout &layout) {
    std::vector<size_t> targets = c_adjacent(layout, Species::A, true);
    if (targets.empty()) {
        throw std::invalid_argument("layout has no syndrome cell adjacent to a C cell");
    }
    PulseSchedule there;
    there.append(swap_sequence(Species::A));
    there.append(swap_sequence(Species::B));
    PulseSchedule mirror = compile_mirror_cycle(Species::B, layout.config.level, layout).schedule;
    for (int i = 0; i < (level >= 1 ? 3 : 1); i++) there.append(mirror);
    there.append(swap_sequence(Species::B));
    PulseSchedule s = there;
    s.push(reset_c());
    s.append(inverse(there));
    ClaimedAction c{"C-adjacent syndrome cells set to |0>, every other cell preserved",
                    {{"syndrome_cells", targets}},
                    "B and C cells in |0>"};
    return finish(std::move(s), "syndrome_reset", level, {{"mirror_cycles", level >= 1 ? 3 : 1}}, std::move(c),
                  layout);
}

CompilationResult compile_edge_rotation(double theta, int level) {
    PulseSchedule cnot;
    cnot.push(species_h(Species::A));
    cnot.append(compile_cz_ab(level).schedule);
    cnot.push(species_h(Species::A));
    PulseSchedule s;
    s.push(species_z(Species::A, theta / 2));
    s.append(cnot);
    s.push(species_x(Species::B));
    s.append(cnot);
    s.push(species_z(Species::A, -theta / 2));
    s.append(cnot);
    s.push(species_x(Species::B));
    s.append(cnot);
    ClaimedAction c{"exp(i theta Z) on A cells next to a C whose other neighbour is B; identity elsewhere",
                    {{"theta", theta}},
                    ""};
    return finish(std::move(s), "edge_rotation", level, {{"theta", theta}}, std::move(c), demo_layout("edge_rotation"));
}

PulseSchedule copy_to_c() {
    PulseSchedule s;
    s.push(species_h(Species::C));
    s.push(window({Pair::AC}, kQuarter));
    s.push(species_z(Species::C, kQuarter));
    s.push(species_h(Species::C));
    s.push(species_x(Species::C));
    s.push(species_z(Species::C, -kQuarter));
    return s;
}

PulseSchedule interblock_core(double phi, int level, const ChainLayout &layout) {
    PulseSchedule there = copy_to_c();
    there.append(swap_sequence(Species::B));
    if (level >= 1) {
        PulseSchedule mirror = compile_mirror_cycle(Species::B, layout.config.level, layout).schedule;
        for (int i = 0; i < 3; i++) there.append(mirror);
    }
    PulseSchedule s = there;
    s.push(window({Pair::BB}, phi));
    s.append(inverse(there));
    return s;
}

double interblock_window_angle() {
    static const double chosen = [] {
        ChainLayout chain = make_chain("AACBBCAA");
        size_t n = chain.size();
        Eigen::MatrixXcd want = diag_zz(n, 1, 6, -kQuarter);
        for (double phi : {kPi / 8, -kPi / 8, kQuarter, -kQuarter}) {
            PulseSchedule s = interblock_core(phi, 0, chain);
            // columns with B and C in |0>
            bool ok = true;
            for (size_t a = 0; a < 16 && ok; a++) {
                size_t idx = 0;
                size_t bits[4] = {a >> 3 & 1, a >> 2 & 1, a >> 1 & 1, a & 1};
                size_t cells[4] = {0, 1, 6, 7};
                for (int k = 0; k < 4; k++) idx |= bits[k] << (n - 1 - cells[k]);
                StateVector out = apply_schedule(StateVector::basis(n, idx), s, chain);
                Eigen::VectorXcd exp = want.col((Eigen::Index)idx);
                std::complex<double> ov = exp.dot(out.amp);
                ok = std::abs(std::abs(ov) - 1) < 1e-10 && std::abs(ov - std::complex<double>(1, 0)) < 1e-10;
            }
            if (ok) return phi;
        }
        throw std::logic_error("no candidate window angle reproduces exp(-i pi/4 ZZ)");
    }();
    return chosen;
}

CompilationResult compile_interblock_cz(int level, const ChainLayout &layout) {
    std::string chain = layout.species_string();
    if (chain.find("ACBBC") == std::string::npos) {
        throw std::invalid_argument("interblock_cz needs two A-blocks joined by a C B B C interconnect");
    }
    PulseSchedule s = interblock_core(interblock_window_angle(), level, layout);
    // exp(-i pi/4 ZZ) -> CZ up to phase
    s.append(compile_edge_phase(Species::A, kQuarter).schedule);
    std::vector<std::pair<size_t, size_t>> facing;
    for (size_t q = 0; q + 5 < layout.size(); q++) {
        if (chain.compare(q, 6, "ACBBCA") == 0) facing.push_back({q, q + 5});
    }
    ClaimedAction c{"CZ between facing edge cells of interconnect-separated blocks",
                    {{"pairs", facing}, {"window_angle", interblock_window_angle()}},
                    "B and C cells in |0>"};
    return finish(std::move(s), "interblock_cz", level, {{"window_angle", interblock_window_angle()}}, std::move(c),
                  layout);
}

CompilationResult compile_intrablock_transversal_cz(const CodeSpec &code, const ChainLayout &layout) {
    if (!code.transversal_cz) throw std::invalid_argument("code '" + code.name + "' has no transversal CZ");
    EdgeOrbit orbit(layout);
    SweepBuilder sb(orbit);
    auto left = code_cells(layout, code, 0, 0), right = code_cells(layout, code, 0, 1);
    nlohmann::json pairs = nlohmann::json::array();
    for (size_t j = 0; j < left.size(); j++) {
        PauliString g(layout.size());
        g.set(left[j], 'Z');
        g.set(right[j], 'Z');
        auto f = orbit.factorize(g, 17 + j);
        if (!f) throw std::logic_error("Z Z outside the edge orbit span");
        sb.rotate(g, *f, kQuarter);
        pairs.push_back({left[j], right[j]});
    }
    sb.finish();
    PulseSchedule s = std::move(sb.schedule);
    s.push(species_z(Species::A, -kQuarter));
    ClaimedAction c{"transversal CZ between the two logical qubits of every block (mirror partners)",
                    {{"pairs_block0", pairs}},
                    "B and C cells and all non-code A cells in |0>"};
    return finish(std::move(s), "intrablock_transversal_cz", 0, {{"code", code.name}}, std::move(c), layout);
}

CompilationResult compile_ancilla_reset(int level) {
    PulseSchedule s;
    s.push(reset_c());
    s.append(swap_sequence(Species::B));
    s.push(reset_c());
    ClaimedAction c{"C cells and C-adjacent B cells set to |0>", {}, "A cells untouched"};
    return finish(std::move(s), "ancilla_reset", level, {}, std::move(c), demo_layout("ancilla_reset"));
}

CompilationResult compile_ec_round(const CodeSpec &code, int level, const ChainLayout &layout) {
    if (layout.config.level != 0 || layout.custom) {
        throw std::invalid_argument("code/layout mismatch: EC rounds are compiled on level-0 block layouts");
    }
    if (role_scheme(layout.config.code_id).data_per_half != code.n_physical) {
        throw std::invalid_argument("code/layout mismatch: layout '" + layout.config.code_id + "' cannot host '" +
                                    code.name + "'");
    }
    PulseSchedule s;
    nlohmann::json readouts = nlohmann::json::array();
    if (!code.generators.empty()) {
        EdgeOrbit orbit(layout);
        SweepBuilder sb(orbit);
        for (size_t l = 0; l < 2; l++) {
            auto cells = code_cells(layout, code, 0, l);
            for (size_t g = 0; g < code.generators.size(); g++) {
                PauliString target(layout.size());
                for (size_t j = 0; j < cells.size(); j++) target.set(cells[j], code.generators[g].at(j));
                auto f = orbit.factorize(target, 1000 + 10 * l + g);
                if (!f) throw std::logic_error("generator outside the edge orbit span");
                sb.measure(target, *f, l, g);
            }
        }
        sb.finish();
        s = std::move(sb.schedule);
        readouts = std::move(sb.readouts);
    }
    size_t decode_at = s.size();
    if (!c_adjacent(layout, Species::A, true).empty()) {
        s.append(compile_syndrome_reset(level, layout).schedule);
    }
    ClaimedAction c{"one EC round per block: measure every generator of both logical qubits, decode, track the "
                    "recovery in the Pauli frame, refresh syndrome cells",
                    {{"code", code.name}},
                    "B and C cells in |0>"};
    return finish(std::move(s), "ec_round", level,
                  {{"code", code.name}, {"readouts", readouts}, {"decode_at", decode_at}}, std::move(c), layout);
}

static Species species_param(const nlohmann::json &p, const char *key, const char *def) {
    std::string v = p.value(key, std::string(def));
    if (v.empty()) throw std::invalid_argument(std::string("empty ") + key);
    return species_from_char(v[0]);
}

CompilationResult compile_gadget(const GadgetSpec &spec, const ChainLayout &layout) {
    const nlohmann::json p = spec.params.is_null() ? nlohmann::json::object() : spec.params;
    const std::string &g = spec.name;
    if (g == "global_S") {
        std::set<Species> set;
        for (char ch : p.value("species_set", std::string("A"))) set.insert(species_from_char(ch));
        return compile_global_S(set, layout);
    }
    if (g == "mirror_cycle") return compile_mirror_cycle(species_param(p, "species", "B"), spec.level, layout);
    if (g == "decouple") {
        std::vector<Pair> keep;
        for (const auto &k : p.value("keep", std::vector<std::string>{})) keep.push_back(pair_from_name(k));
        return compile_decoupling(keep, p.value("angle", p.value("theta", kQuarter)));
    }
    if (g == "edge_phase") return compile_edge_phase(species_param(p, "species", "A"), p.value("theta", kQuarter));
    if (g == "edge_rotation") return compile_edge_rotation(p.value("theta", kQuarter), spec.level);
    if (g == "cz_ab") return compile_cz_ab(spec.level);
    if (g == "swap_interface") return compile_swap_interface(species_param(p, "species", "A"));
    if (g == "syndrome_reset") return compile_syndrome_reset(spec.level, layout);
    if (g == "interblock_cz") return compile_interblock_cz(spec.level, layout);
    if (g == "intrablock_transversal_cz") {
        return compile_intrablock_transversal_cz(builtin_code(p.value("code", layout.config.code_id)), layout);
    }
    if (g == "ancilla_reset") return compile_ancilla_reset(spec.level);
    if (g == "ec_round") return compile_ec_round(builtin_code(p.value("code", layout.config.code_id)), spec.level, layout);
    throw std::invalid_argument("unknown gadget '" + g + "'");
}

}  // namespace globalchain
