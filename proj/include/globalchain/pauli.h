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

#ifndef GLOBALCHAIN_PAULI_H
#define GLOBALCHAIN_PAULI_H

#include <cstdint>
#include <string>
#include <vector>

#include "globalchain/layout.h"
#include "globalchain/pulse.h"

namespace globalchain {

// i^phase * tensor product of {I, X, Y, Z}; Y is stored as x = z = 1.
struct PauliString {
    std::vector<uint8_t> xs;
    std::vector<uint8_t> zs;
    uint8_t phase = 0;

    PauliString() = default;
    explicit PauliString(size_t n) : xs(n, 0), zs(n, 0) {}
    static PauliString from_str(const std::string &text);  // e.g. "+XIZ", "-iY_Z"

    size_t size() const { return xs.size(); }
    size_t weight() const;
    char at(size_t q) const;
    void set(size_t q, char p);
    bool commutes(const PauliString &other) const;
    bool same_up_to_phase(const PauliString &other) const;
    bool is_identity_up_to_phase() const;
    std::string str() const;

    // this = this * rhs
    PauliString &operator*=(const PauliString &rhs);
    bool operator==(const PauliString &o) const = default;
};

PauliString operator*(PauliString a, const PauliString &b);

// Number of quarter turns k such that theta = k pi/4, reduced mod 4. Throws for non-Clifford angles.
int quarter_turns(double theta);
bool is_clifford_angle(double theta);

// In-place conjugation P -> G P G^dag by elementary Cliffords.
void conj_h(PauliString &p, size_t q);
void conj_x(PauliString &p, size_t q);
// G = exp(i k pi/4 Q) for a Pauli Q.
void conj_rotation(PauliString &p, const PauliString &q, int k);
void conj_z_rotation(PauliString &p, size_t q, int k);
void conj_zz_rotation(PauliString &p, size_t a, size_t b, int k);

// P -> G P G^dag for a Clifford pulse on the layout, or G^dag P G when dagger is set.
void conj_pulse(PauliString &p, const Pulse &pulse, const ChainLayout &layout, bool dagger = false);

// Adjacent cell pairs acted on by a coupling window.
std::vector<std::pair<size_t, size_t>> active_bonds(const CouplingWindow &w, const ChainLayout &layout);

}  // namespace globalchain

#endif
