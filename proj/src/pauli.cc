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

#include "globalchain/pauli.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

namespace globalchain {

PauliString PauliString::from_str(const std::string &text) {
    size_t k = 0;
    uint8_t phase = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        phase = text[k] == '-' ? 2 : 0;
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase = (phase + 1) & 3;
        k++;
    }
    PauliString p(text.size() - k);
    p.phase = phase;
    for (size_t q = 0; k < text.size(); k++, q++) {
        p.set(q, text[k]);
    }
    return p;
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t q = 0; q < size(); q++) {
        w += (xs[q] | zs[q]) != 0;
    }
    return w;
}

char PauliString::at(size_t q) const {
    return "IXZY"[xs[q] + 2 * zs[q]];
}

void PauliString::set(size_t q, char p) {
    switch (p) {
        case 'I':
        case '_':
            xs[q] = 0, zs[q] = 0;
            break;
        case 'X':
            xs[q] = 1, zs[q] = 0;
            break;
        case 'Y':
            xs[q] = 1, zs[q] = 1;
            break;
        case 'Z':
            xs[q] = 0, zs[q] = 1;
            break;
        default:
            throw std::invalid_argument(std::string("bad Pauli character '") + p + "'");
    }
}

bool PauliString::commutes(const PauliString &o) const {
    unsigned acc = 0;
    for (size_t q = 0; q < size(); q++) {
        acc ^= (xs[q] & o.zs[q]) ^ (zs[q] & o.xs[q]);
    }
    return acc == 0;
}

bool PauliString::same_up_to_phase(const PauliString &o) const {
    return xs == o.xs && zs == o.zs;
}

bool PauliString::is_identity_up_to_phase() const {
    return weight() == 0;
}

std::string PauliString::str() const {
    static const char *const PH[] = {"+", "+i", "-", "-i"};
    std::string out = PH[phase];
    for (size_t q = 0; q < size(); q++) {
        char c = at(q);
        out.push_back(c == 'I' ? '_' : c);
    }
    return out;
}

// Exponent of i picked up by sigma(x1,z1) * sigma(x2,z2).
static int g_phase(int x1, int z1, int x2, int z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return z2 - x2;
    if (x1) return z2 * (2 * x2 - 1);
    return x2 * (1 - 2 * z2);
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.size() != size()) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    int ph = phase + rhs.phase;
    for (size_t q = 0; q < size(); q++) {
        ph += g_phase(xs[q], zs[q], rhs.xs[q], rhs.zs[q]);
        xs[q] ^= rhs.xs[q];
        zs[q] ^= rhs.zs[q];
    }
    phase = (uint8_t)(((ph % 4) + 4) % 4);
    return *this;
}

PauliString operator*(PauliString a, const PauliString &b) {
    a *= b;
    return a;
}

int quarter_turns(double theta) {
    double k = theta / (std::numbers::pi / 4);
    double r = std::round(k);
    if (std::abs(k - r) > 1e-9) {
        throw std::invalid_argument("non-Clifford angle " + std::to_string(theta));
    }
    long long kk = (long long)r;
    return (int)(((kk % 4) + 4) % 4);
}

bool is_clifford_angle(double theta) {
    double k = theta / (std::numbers::pi / 4);
    return std::abs(k - std::round(k)) <= 1e-9;
}

void conj_h(PauliString &p, size_t q) {
    if (p.xs[q] && p.zs[q]) {
        p.phase ^= 2;
    }
    std::swap(p.xs[q], p.zs[q]);
}

void conj_x(PauliString &p, size_t q) {
    if (p.zs[q]) {
        p.phase ^= 2;
    }
}

// exp(i k pi/4 Q) P exp(-i k pi/4 Q) = exp(i k pi/2 Q) P when P and Q anticommute.
void conj_rotation(PauliString &p, const PauliString &q, int k) {
    k &= 3;
    if (k == 0 || p.commutes(q)) {
        return;
    }
    if (k == 2) {
        p.phase ^= 2;
        return;
    }
    PauliString r = q;
    r.phase = (uint8_t)((r.phase + (k == 1 ? 1 : 3)) & 3);
    r *= p;
    p = r;
}

// Left-multiplies by i^k Z_q ... Z_r without touching other sites.
static void mul_z_sites(PauliString &p, int k, std::initializer_list<size_t> sites) {
    int ph = p.phase + k;
    for (size_t q : sites) {
        ph += g_phase(0, 1, p.xs[q], p.zs[q]);
        p.zs[q] ^= 1;
    }
    p.phase = (uint8_t)(ph & 3);
}

void conj_z_rotation(PauliString &p, size_t q, int k) {
    k &= 3;
    if (k == 0 || !p.xs[q]) {
        return;
    }
    if (k == 2) {
        p.phase ^= 2;
        return;
    }
    mul_z_sites(p, k, {q});
}

void conj_zz_rotation(PauliString &p, size_t a, size_t b, int k) {
    k &= 3;
    if (k == 0 || (p.xs[a] ^ p.xs[b]) == 0) {
        return;
    }
    if (k == 2) {
        p.phase ^= 2;
        return;
    }
    mul_z_sites(p, k, {a, b});
}

std::vector<std::pair<size_t, size_t>> active_bonds(const CouplingWindow &w, const ChainLayout &layout) {
    std::vector<std::pair<size_t, size_t>> out;
    const auto &cells = layout.cells;
    for (size_t q = 0; q + 1 < cells.size(); q++) {
        Species a = cells[q].species, b = cells[q + 1].species;
        if (a == Species::C && b == Species::C) {
            continue;
        }
        Pair pr = pair_of(a, b);
        if (std::find(w.pairs.begin(), w.pairs.end(), pr) != w.pairs.end()) {
            out.emplace_back(q, q + 1);
        }
    }
    return out;
}

void conj_pulse(PauliString &p, const Pulse &pulse, const ChainLayout &layout, bool dagger) {
    const auto &cells = layout.cells;
    if (const auto *u = std::get_if<SpeciesUnitary>(&pulse)) {
        int k = u->gate == Gate::Z ? quarter_turns(dagger ? -u->theta : u->theta) : 0;
        for (size_t q = 0; q < cells.size(); q++) {
            if (cells[q].species != u->species) {
                continue;
            }
            if (u->gate == Gate::H) {
                conj_h(p, q);
            } else if (u->gate == Gate::X) {
                conj_x(p, q);
            } else {
                conj_z_rotation(p, q, k);
            }
        }
    } else if (const auto *w = std::get_if<CouplingWindow>(&pulse)) {
        int k = quarter_turns(dagger ? -w->angle : w->angle);
        for (auto [a, b] : active_bonds(*w, layout)) {
            conj_zz_rotation(p, a, b, k);
        }
    } else {
        throw std::invalid_argument("pulse '" + describe(pulse) + "' is not a unitary Clifford");
    }
}

}  // namespace globalchain
