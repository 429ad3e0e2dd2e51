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

#include "globalchain/densesim.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace globalchain {

using cd = std::complex<double>;

static size_t g_limit = 14;

size_t dense_qubit_limit() {
    return g_limit;
}

void set_dense_qubit_limit(size_t n) {
    g_limit = n;
}

static void check_size(size_t n) {
    if (n > g_limit) {
        throw std::invalid_argument(
            "dense simulation of " + std::to_string(n) + " qubits exceeds the limit of " + std::to_string(g_limit));
    }
}

StateVector StateVector::zero(size_t n) {
    return basis(n, 0);
}

StateVector StateVector::basis(size_t n, size_t index) {
    check_size(n);
    StateVector s;
    s.n = n;
    s.amp = Eigen::VectorXcd::Zero((Eigen::Index)1 << n);
    s.amp[(Eigen::Index)index] = 1;
    return s;
}

StateVector StateVector::product(const std::vector<Eigen::Vector2cd> &qubits) {
    size_t n = qubits.size();
    check_size(n);
    StateVector s;
    s.n = n;
    s.amp = Eigen::VectorXcd::Ones((Eigen::Index)1 << n);
    for (size_t i = 0; i < ((size_t)1 << n); i++) {
        for (size_t q = 0; q < n; q++) {
            s.amp[(Eigen::Index)i] *= qubits[q][(i >> (n - 1 - q)) & 1];
        }
    }
    return s;
}

static inline size_t bit_of(size_t n, size_t q) {
    return (size_t)1 << (n - 1 - q);
}

static void apply_1q(StateVector &s, size_t q, const Eigen::Matrix2cd &g) {
    size_t m = bit_of(s.n, q);
    size_t dim = (size_t)1 << s.n;
    for (size_t i = 0; i < dim; i++) {
        if (i & m) {
            continue;
        }
        cd a0 = s.amp[(Eigen::Index)i], a1 = s.amp[(Eigen::Index)(i | m)];
        s.amp[(Eigen::Index)i] = g(0, 0) * a0 + g(0, 1) * a1;
        s.amp[(Eigen::Index)(i | m)] = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

double cell_purity(const StateVector &s, size_t q) {
    size_t m = bit_of(s.n, q);
    cd r00 = 0, r11 = 0, r01 = 0;
    for (size_t i = 0; i < ((size_t)1 << s.n); i++) {
        if (i & m) {
            continue;
        }
        cd a0 = s.amp[(Eigen::Index)i], a1 = s.amp[(Eigen::Index)(i | m)];
        r00 += std::norm(a0);
        r11 += std::norm(a1);
        r01 += a0 * std::conj(a1);
    }
    return std::real(r00 * r00 + r11 * r11) + 2 * std::norm(r01);
}

static void reset_cell(StateVector &s, size_t q) {
    // Resets happen only on disentangled C cells; anything else is a compiler bug.
    double purity = cell_purity(s, q);
    if (purity < 1 - 1e-8) {
        throw std::runtime_error(
            "ResetC on C cell " + std::to_string(q) + " entangled with the chain (purity " + std::to_string(purity) +
            ")");
    }
    size_t m = bit_of(s.n, q);
    size_t dim = (size_t)1 << s.n;
    double n0 = 0, n1 = 0;
    for (size_t i = 0; i < dim; i++) {
        ((i & m) ? n1 : n0) += std::norm(s.amp[(Eigen::Index)i]);
    }
    bool keep_one = n1 > n0;
    double scale = 1 / std::sqrt(keep_one ? n1 : n0);
    for (size_t i = 0; i < dim; i++) {
        if (i & m) {
            continue;
        }
        cd v = keep_one ? s.amp[(Eigen::Index)(i | m)] : s.amp[(Eigen::Index)i];
        s.amp[(Eigen::Index)i] = v * scale;
        s.amp[(Eigen::Index)(i | m)] = 0;
    }
}

Eigen::Matrix2cd gate_h() {
    Eigen::Matrix2cd g;
    double r = 1 / std::sqrt(2.0);
    g << r, r, r, -r;
    return g;
}

Eigen::Matrix2cd gate_x() {
    Eigen::Matrix2cd g;
    g << 0, 1, 1, 0;
    return g;
}

Eigen::Matrix2cd gate_z() {
    Eigen::Matrix2cd g;
    g << 1, 0, 0, -1;
    return g;
}

Eigen::Matrix2cd gate_rz(double theta) {
    Eigen::Matrix2cd g;
    g << std::polar(1.0, theta), 0, 0, std::polar(1.0, -theta);
    return g;
}

StateVector apply_pulse(const StateVector &state, const Pulse &pulse, const ChainLayout &layout) {
    if (layout.size() != state.n) {
        throw std::invalid_argument(
            "state has " + std::to_string(state.n) + " qubits but layout has " + std::to_string(layout.size()) +
            " cells");
    }
    StateVector s = state;
    const auto &cells = layout.cells;
    if (const auto *u = std::get_if<SpeciesUnitary>(&pulse)) {
        Eigen::Matrix2cd g = u->gate == Gate::H ? gate_h() : u->gate == Gate::X ? gate_x() : gate_rz(u->theta);
        for (size_t q = 0; q < s.n; q++) {
            if (cells[q].species == u->species) {
                apply_1q(s, q, g);
            }
        }
    } else if (const auto *w = std::get_if<CouplingWindow>(&pulse)) {
        auto bonds = active_bonds(*w, layout);
        if (!bonds.empty()) {
            size_t dim = (size_t)1 << s.n;
            for (size_t i = 0; i < dim; i++) {
                int acc = 0;
                for (auto [a, b] : bonds) {
                    bool za = (i & bit_of(s.n, a)) != 0, zb = (i & bit_of(s.n, b)) != 0;
                    acc += za == zb ? 1 : -1;
                }
                s.amp[(Eigen::Index)i] *= std::polar(1.0, w->angle * acc);
            }
        }
    } else if (std::holds_alternative<ResetC>(pulse)) {
        for (size_t q = 0; q < s.n; q++) {
            if (cells[q].species == Species::C) {
                reset_cell(s, q);
            }
        }
    } else {
        throw std::invalid_argument("site-addressed pseudo-pulse has no dense semantics");
    }
    return s;
}

StateVector apply_schedule(const StateVector &state, const PulseSchedule &schedule, const ChainLayout &layout) {
    StateVector s = state;
    for (const auto &p : schedule.pulses) {
        s = apply_pulse(s, p, layout);
    }
    return s;
}

Eigen::MatrixXcd schedule_unitary(const PulseSchedule &schedule, const ChainLayout &layout) {
    size_t n = layout.size();
    check_size(n);
    for (const auto &p : schedule.pulses) {
        if (std::holds_alternative<ResetC>(p)) {
            throw std::invalid_argument("schedule contains ResetC and has no unitary");
        }
    }
    size_t dim = (size_t)1 << n;
    Eigen::MatrixXcd u(dim, dim);
    for (size_t c = 0; c < dim; c++) {
        u.col((Eigen::Index)c) = apply_schedule(StateVector::basis(n, c), schedule, layout).amp;
    }
    return u;
}

nlohmann::json EquivalenceReport::to_json() const {
    nlohmann::json j;
    j["equal_up_to_phase"] = equal_up_to_phase;
    j["max_deviation"] = max_deviation;
    j["phase"] = phase;
    if (dressing) {
        nlohmann::json d = nlohmann::json::array();
        for (size_t k = 0; k < dressing_sites.size(); k++) {
            d.push_back({{"site", dressing_sites[k]}, {"z_quarter_turns", (*dressing)[k]}});
        }
        j["dressing"] = d;
    } else {
        j["dressing"] = nullptr;
    }
    return j;
}

EquivalenceReport equivalent_up_to_phase(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v, double tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("dimension mismatch in equivalence check");
    }
    EquivalenceReport rep;
    // Phase from the largest entry of v: the first reliably nonzero one.
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    cd ph = 1;
    if (std::abs(v(r, c)) > 0 && std::abs(u(r, c)) > 0) {
        ph = u(r, c) / v(r, c);
        ph /= std::abs(ph);
    }
    rep.phase = std::arg(ph);
    rep.max_deviation = (u - ph * v).cwiseAbs().maxCoeff();
    rep.equal_up_to_phase = rep.max_deviation <= tol;
    return rep;
}

EquivalenceReport find_local_z_dressing(
    const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &target, const std::vector<size_t> &sites, double tol) {
    if (u.rows() != target.rows() || u.cols() != target.cols()) {
        throw std::invalid_argument("dimension mismatch in dressing search");
    }
    size_t dim = (size_t)u.rows();
    size_t n = 0;
    while (((size_t)1 << n) < dim) {
        n++;
    }
    EquivalenceReport best;
    best.max_deviation = INFINITY;
    std::vector<int> ks(sites.size(), 0);
    while (true) {
        Eigen::VectorXcd d = Eigen::VectorXcd::Ones((Eigen::Index)dim);
        for (size_t i = 0; i < dim; i++) {
            double ang = 0;
            for (size_t s = 0; s < sites.size(); s++) {
                bool one = (i >> (n - 1 - sites[s])) & 1;
                ang += (one ? -1 : 1) * ks[s] * std::numbers::pi / 4;
            }
            d[(Eigen::Index)i] = std::polar(1.0, ang);
        }
        EquivalenceReport rep = equivalent_up_to_phase(d.asDiagonal() * u, target, tol);
        if (rep.max_deviation < best.max_deviation) {
            best = rep;
            best.dressing = ks;
        }
        if (rep.equal_up_to_phase) {
            break;
        }
        size_t s = 0;
        while (s < ks.size() && ++ks[s] == 8) {
            ks[s++] = 0;
        }
        if (s == ks.size()) {
            break;
        }
    }
    best.dressing_sites = sites;
    if (!best.equal_up_to_phase) {
        best.dressing.reset();
    }
    return best;
}

StateVector apply_pauli(const StateVector &state, const PauliString &p) {
    StateVector s = state;
    static const cd IPOW[] = {1, cd(0, 1), -1, cd(0, -1)};
    for (size_t q = 0; q < p.size(); q++) {
        if (p.xs[q]) {
            apply_1q(s, q, gate_x());
        }
        if (p.zs[q]) {
            apply_1q(s, q, gate_z());
        }
        if (p.xs[q] && p.zs[q]) {
            // X then Z gives Z X = i Y.
            s.amp *= cd(0, -1);
        }
    }
    s.amp *= IPOW[p.phase];
    return s;
}

std::complex<double> expectation(const StateVector &state, const PauliString &p) {
    return state.amp.dot(apply_pauli(state, p).amp);
}

Eigen::MatrixXcd embed(size_t n, const std::map<size_t, Eigen::Matrix2cd> &ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (size_t q = 0; q < n; q++) {
        auto it = ops.find(q);
        Eigen::Matrix2cd g = it == ops.end() ? Eigen::Matrix2cd::Identity() : it->second;
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); r++) {
            for (Eigen::Index c = 0; c < out.cols(); c++) {
                next.block<2, 2>(2 * r, 2 * c) = out(r, c) * g;
            }
        }
        out = next;
    }
    return out;
}

Eigen::MatrixXcd diag_zz(size_t n, size_t a, size_t b, double phi) {
    size_t dim = (size_t)1 << n;
    Eigen::VectorXcd d(dim);
    for (size_t i = 0; i < dim; i++) {
        bool za = (i >> (n - 1 - a)) & 1, zb = (i >> (n - 1 - b)) & 1;
        d[(Eigen::Index)i] = std::polar(1.0, phi * (za == zb ? 1 : -1));
    }
    return d.asDiagonal();
}

Eigen::MatrixXcd cz_matrix(size_t n, size_t a, size_t b) {
    size_t dim = (size_t)1 << n;
    Eigen::VectorXcd d(dim);
    for (size_t i = 0; i < dim; i++) {
        bool za = (i >> (n - 1 - a)) & 1, zb = (i >> (n - 1 - b)) & 1;
        d[(Eigen::Index)i] = za && zb ? -1 : 1;
    }
    return d.asDiagonal();
}

Eigen::MatrixXcd swap_matrix(size_t n, size_t a, size_t b) {
    size_t dim = (size_t)1 << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    size_t ma = (size_t)1 << (n - 1 - a), mb = (size_t)1 << (n - 1 - b);
    for (size_t i = 0; i < dim; i++) {
        size_t j = i & ~(ma | mb);
        if (i & ma) j |= mb;
        if (i & mb) j |= ma;
        u((Eigen::Index)j, (Eigen::Index)i) = 1;
    }
    return u;
}

}  // namespace globalchain
