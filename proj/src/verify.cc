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


#include "globalchain/verify.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "globalchain/compiler.h"
#include "globalchain/qec.h"
#include "globalchain/stabsim.h"

namespace globalchain {

namespace {

constexpr double kQuarter = 0.7853981633974483;
constexpr double kTol = 1e-9;

size_t embed_index(size_t a, const std::vector<size_t> &cells, size_t n) {
    size_t k = cells.size(), idx = 0;
    for (size_t j = 0; j < k; j++) {
        if (a >> (k - 1 - j) & 1) idx |= size_t{1} << (n - 1 - cells[j]);
    }
    return idx;
}

Eigen::VectorXcd random_vector(size_t dim, Rng &rng) {
    Eigen::VectorXcd v(dim);
    for (size_t i = 0; i < dim; i++) {
        // Box-Muller is plenty here.
        double u1 = 1 - rng.uniform(), u2 = rng.uniform();
        double r = std::sqrt(-2 * std::log(u1));
        v[(Eigen::Index)i] = {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
    }
    return v.normalized();
}

// |psi> on `reg` (entangled), fixed single-cell states elsewhere.
StateVector assemble(size_t n, const std::vector<size_t> &reg, const Eigen::VectorXcd &psi,
                     const std::map<size_t, Eigen::Vector2cd> &others) {
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++) {
        bool in = false;
        for (size_t r : reg) in |= r == q;
        if (!in) rest.push_back(q);
    }
    StateVector s;
    s.n = n;
    s.amp = Eigen::VectorXcd::Zero((Eigen::Index)(size_t{1} << n));
    for (size_t a = 0; a < (size_t{1} << reg.size()); a++) {
        for (size_t b = 0; b < (size_t{1} << rest.size()); b++) {
            std::complex<double> amp = psi[(Eigen::Index)a];
            for (size_t j = 0; j < rest.size(); j++) {
                auto it = others.find(rest[j]);
                Eigen::Vector2cd v = it == others.end() ? Eigen::Vector2cd(1, 0) : it->second;
                amp *= v[(int)(b >> (rest.size() - 1 - j) & 1)];
            }
            if (amp == std::complex<double>(0, 0)) continue;
            s.amp[(Eigen::Index)(embed_index(a, reg, n) | embed_index(b, rest, n))] += amp;
        }
    }
    return s;
}

GadgetCheck from_equivalence(const std::string &name, const EquivalenceReport &r, nlohmann::json extra = {}) {
    GadgetCheck g;
    g.gadget = name;
    g.pass = r.equal_up_to_phase;
    g.max_deviation = r.max_deviation;
    g.report = r.to_json();
    if (!extra.is_null()) g.report["detail"] = std::move(extra);
    return g;
}

GadgetCheck reduced_check(const std::string &name, const PulseSchedule &s, const ChainLayout &layout,
                          const std::vector<size_t> &cells, const Eigen::MatrixXcd &target) {
    double leak = 0;
    auto u = reduced_action(s, layout, cells, 1e-10, &leak);
    if (!u) {
        GadgetCheck g;
        g.gadget = name;
        g.max_deviation = leak;
        g.note = "leaves the precondition subspace";
        g.report = {{"leakage", leak}};
        return g;
    }
    return from_equivalence(name, equivalent_up_to_phase(*u, target), {{"cells", cells}});
}

GadgetCheck fidelity_check(const std::string &name, const StateVector &out, const StateVector &want) {
    GadgetCheck g;
    g.gadget = name;
    double f = std::norm(want.amp.dot(out.amp));
    g.max_deviation = 1 - f;
    g.pass = g.max_deviation < kTol;
    g.report = {{"fidelity", f}};
    return g;
}

Eigen::MatrixXcd all_h(size_t k) {
    std::map<size_t, Eigen::Matrix2cd> ops;
    for (size_t q = 0; q < k; q++) ops[q] = gate_h();
    return embed(k, ops);
}

}  // namespace

std::vector<Eigen::Vector2cd> random_product(size_t n, uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::Vector2cd> out;
    for (size_t q = 0; q < n; q++) {
        Eigen::VectorXcd v = random_vector(2, rng);
        out.emplace_back(v[0], v[1]);
    }
    return out;
}

std::optional<Eigen::MatrixXcd> reduced_action(const PulseSchedule &s, const ChainLayout &layout,
                                               const std::vector<size_t> &cells, double tol, double *leakage) {
    size_t n = layout.size(), k = cells.size(), dim = size_t{1} << k;
    Eigen::MatrixXcd u(dim, dim);
    double worst = 0;
    for (size_t a = 0; a < dim; a++) {
        StateVector out = apply_schedule(StateVector::basis(n, embed_index(a, cells, n)), s, layout);
        double kept = 0;
        for (size_t b = 0; b < dim; b++) {
            auto v = out.amp[(Eigen::Index)embed_index(b, cells, n)];
            u((Eigen::Index)b, (Eigen::Index)a) = v;
            kept += std::norm(v);
        }
        worst = std::max(worst, 1 - kept);
    }
    if (leakage) *leakage = worst;
    if (worst > tol) return std::nullopt;
    return u;
}

Eigen::MatrixXcd reduced_cz(size_t k, size_t a, size_t b) { return cz_matrix(k, a, b); }

GadgetCheck verify_gadget(const std::string &name, int level, double theta) {
    ChainLayout layout = demo_layout(name, level);
    size_t n = layout.size();
    GadgetCheck g;
    if (name == "global_S") {
        auto s = compile_global_S({Species::A}, layout).schedule;
        Eigen::MatrixXcd t = all_h(4) * cz_matrix(4, 0, 1) * cz_matrix(4, 1, 2) * cz_matrix(4, 2, 3);
        g = reduced_check(name, s, layout, {1, 2, 3, 4}, t);
    } else if (name == "mirror_cycle") {
        auto s = compile_mirror_cycle(Species::B, level, layout).schedule;
        if (level >= 1) {
            g = reduced_check(name, s, layout, {1, 2, 3, 4}, swap_matrix(4, 0, 3) * swap_matrix(4, 1, 2));
        } else {
            g = reduced_check(name, s, layout, {1, 2}, swap_matrix(2, 0, 1));
        }
    } else if (name == "decouple") {
        auto kept = schedule_unitary(compile_decoupling({Pair::AC}, theta).schedule, layout);
        auto none = schedule_unitary(compile_decoupling({}, theta).schedule, layout);
        auto r1 = equivalent_up_to_phase(kept, diag_zz(3, 0, 1, theta));
        auto r2 = equivalent_up_to_phase(none, Eigen::MatrixXcd::Identity(8, 8));
        g = from_equivalence(name, r1, {{"decouple_all", r2.to_json()}});
        g.pass = r1.equal_up_to_phase && r2.equal_up_to_phase;
        g.max_deviation = std::max(r1.max_deviation, r2.max_deviation);
    } else if (name == "edge_phase") {
        auto s = compile_edge_phase(Species::A, theta).schedule;
        g = reduced_check(name, s, layout, {0, 1}, embed(2, {{1, gate_rz(theta)}}));
    } else if (name == "edge_rotation") {
        auto u = schedule_unitary(compile_edge_rotation(theta, level).schedule, layout);
        g = from_equivalence(name, equivalent_up_to_phase(u, embed(n, {{2, gate_rz(theta)}})));
    } else if (name == "cz_ab") {
        auto u = schedule_unitary(compile_cz_ab(level).schedule, layout);
        g = from_equivalence(name, equivalent_up_to_phase(u, cz_matrix(3, 0, 2)));
    } else if (name == "swap_interface") {
        auto ua = schedule_unitary(compile_swap_interface(Species::A).schedule, layout);
        ChainLayout other = make_chain("ACBB");
        auto ub = schedule_unitary(compile_swap_interface(Species::B).schedule, other);
        auto r1 = equivalent_up_to_phase(ua, swap_matrix(4, 1, 2));
        auto r2 = equivalent_up_to_phase(ub, swap_matrix(4, 1, 2));
        g = from_equivalence(name, r1, {{"B_side", r2.to_json()}});
        g.pass = r1.equal_up_to_phase && r2.equal_up_to_phase;
        g.max_deviation = std::max(r1.max_deviation, r2.max_deviation);
    } else if (name == "syndrome_reset") {
        auto res = compile_syndrome_reset(level, layout);
        std::vector<size_t> targets = res.claimed_action.roles.at("syndrome_cells").get<std::vector<size_t>>();
        // everything that is neither a target nor B/C carries an entangled state
        std::vector<size_t> reg;
        for (size_t q = 0; q < n; q++) {
            if (layout.cells[q].species != Species::A) continue;
            bool t = false;
            for (size_t x : targets) t |= x == q;
            if (!t) reg.push_back(q);
        }
        Rng rng(101 + (uint64_t)level);
        Eigen::VectorXcd psi = random_vector(size_t{1} << reg.size(), rng);
        auto junk = random_product(targets.size(), 202);
        std::map<size_t, Eigen::Vector2cd> in_other;
        for (size_t j = 0; j < targets.size(); j++) in_other[targets[j]] = junk[j];
        StateVector in = assemble(n, reg, psi, in_other);
        StateVector want = assemble(n, reg, psi, {});
        StateVector out = apply_schedule(in, res.schedule, layout);
        g = fidelity_check(name, out, want);
        g.report["targets"] = targets;
    } else if (name == "interblock_cz") {
        std::vector<size_t> cells = {0, 1, 6, 7};
        Eigen::MatrixXcd target = cz_matrix(4, 1, 2);
        g = reduced_check(name, compile_interblock_cz(level, layout).schedule, layout, cells, target);
        // the undressed core is CZ up to local Z rotations on the facing cells
        auto core = reduced_action(interblock_core(interblock_window_angle(), level, layout), layout, cells);
        bool dressed = false;
        if (core) {
            auto r = find_local_z_dressing(*core, target, {1, 2});
            dressed = r.equal_up_to_phase;
            g.report["core_dressing"] = r.to_json();
        }
        g.pass = g.pass && dressed;
    } else if (name == "intrablock_transversal_cz") {
        auto s = compile_intrablock_transversal_cz(builtin_code("bare"), layout).schedule;
        g = reduced_check(name, s, layout, {0, 1, 6, 7}, cz_matrix(4, 0, 1) * cz_matrix(4, 2, 3));
    } else if (name == "ancilla_reset") {
        auto s = compile_ancilla_reset(level).schedule;
        std::vector<size_t> reg = {0, 5};
        Rng rng(303);
        Eigen::VectorXcd psi = random_vector(4, rng);
        auto junk = random_product(4, 404);
        std::map<size_t, Eigen::Vector2cd> in_other = {{1, junk[0]}, {2, junk[1]}, {3, junk[2]}, {4, junk[3]}};
        StateVector out = apply_schedule(assemble(n, reg, psi, in_other), s, layout);
        g = fidelity_check(name, out, assemble(n, reg, psi, {}));
    } else if (name == "ec_round") {
        // too wide for the dense engine; a noiseless tableau run stands in
        CodeSpec code = builtin_code("steane");
        auto s = compile_ec_round(code, level, layout).schedule;
        bool ok = true;
        nlohmann::json rep = nlohmann::json::object();
        for (char basis : {'Z', 'X'}) {
            Tableau t = prepare_code_state(layout, code, basis);
            Tableau ref = t;
            TableauRun run = run_schedule(t, s, layout);
            bool trivial = true;
            for (int o : run.outcomes) trivial &= o == 0;
            bool same = t.same_state(ref);
            ok = ok && run.all_deterministic && trivial && same;
            rep[std::string(1, basis)] = {{"readouts", run.outcomes.size()},
                                          {"deterministic", run.all_deterministic},
                                          {"trivial_syndrome", trivial},
                                          {"state_preserved", same}};
        }
        g.gadget = name;
        g.pass = ok;
        g.max_deviation = ok ? 0 : 1;
        g.report = rep;
        g.note = "stabilizer check";
    } else {
        throw std::invalid_argument("unknown gadget '" + name + "'");
    }
    g.gadget = name;
    g.report["level"] = level;
    return g;
}

std::vector<GadgetCheck> selftest_all() {
    std::vector<GadgetCheck> out;
    for (const auto &name : gadget_names()) out.push_back(verify_gadget(name, 0));
    return out;
}

AgreementReport stabilizer_dense_agreement(const std::string &gadget, uint64_t seed, size_t cases) {
    AgreementReport rep;
    ChainLayout layout = demo_layout(gadget);
    size_t n = layout.size();
    GadgetSpec spec{gadget, 0, nlohmann::json::object()};
    // Clifford parameter choices
    if (gadget == "edge_rotation") spec.params["theta"] = 2 * kQuarter;
    if (gadget == "edge_phase" || gadget == "decouple") spec.params["angle"] = kQuarter;
    PulseSchedule raw = compile_gadget(spec, layout).schedule;
    PulseSchedule s = clifford_normal_form(raw);

    bool resets = std::any_of(raw.pulses.begin(), raw.pulses.end(),
                              [](const Pulse &p) { return std::holds_alternative<ResetC>(p); });

    // cells that may hold arbitrary input; the rest start in |0>
    std::vector<size_t> free;
    for (size_t q = 0; q < n; q++) {
        Species sp = layout.cells[q].species;
        bool ok = sp == Species::A;
        if (gadget == "decouple" || gadget == "cz_ab" || gadget == "swap_interface" || gadget == "edge_rotation") {
            ok = true;
        }
        if (gadget == "mirror_cycle") ok = sp == Species::B;
        if (gadget == "intrablock_transversal_cz" && sp == Species::A) {
            ok = layout.cells[q].role == CellRole::Data;
        }
        if (resets && sp == Species::C) ok = false;
        // a syndrome cell entangled with data would turn the reset into a measurement
        if (gadget == "syndrome_reset" && layout.cells[q].role == CellRole::Syndrome) ok = false;
        if (ok) free.push_back(q);
    }

    Rng rng(seed);
    for (size_t c = 0; c < cases; c++) {
        Tableau t = Tableau::zero(n);
        StateVector psi = StateVector::zero(n);
        Eigen::Matrix2cd s_gate = gate_rz(kQuarter);
        size_t gates = 3 * free.size() + 2;
        for (size_t k = 0; k < gates && !free.empty(); k++) {
            size_t q = free[rng.below(free.size())];
            switch (rng.below(3)) {
                case 0: {
                    t.h(q);
                    psi.amp = embed(n, {{q, gate_h()}}) * psi.amp;
                    break;
                }
                case 1: {
                    t.rz_quarter(q, 1);
                    psi.amp = embed(n, {{q, s_gate}}) * psi.amp;
                    break;
                }
                default: {
                    size_t r = free[rng.below(free.size())];
                    if (r == q) break;
                    t.zz_quarter(q, r, 1);
                    psi.amp = diag_zz(n, q, r, kQuarter) * psi.amp;
                }
            }
        }
        for (const auto &p : s.pulses) t.apply_pulse(p, layout);
        StateVector out = apply_schedule(psi, raw, layout);
        for (const auto &st : t.stabilizers()) {
            auto e = expectation(out, st);
            if (std::abs(e - std::complex<double>(1, 0)) > 1e-8) {
                rep.pass = false;
                std::ostringstream os;
                os << "case " << c << ": <" << st.str() << "> = " << e.real() << "+" << e.imag() << "i";
                rep.detail = os.str();
                return rep;
            }
        }
        rep.cases++;
    }
    return rep;
}

}  // namespace globalchain
